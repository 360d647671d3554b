#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "bellperm/circuit.hpp"
#include "bellperm/circuit_json.hpp"
#include "bellperm/optimizer.hpp"
#include "bellperm/rng.hpp"
#include "bellperm/sim.hpp"
#include "bellperm/stabilizer_code.hpp"

using namespace bellperm;

namespace {

void check_within_bounds(const Circuit& c, const SearchConfig& cfg) {
    const CircuitStats s = circuit_stats(c);
    CHECK(s.register_width <= cfg.max_registers);
    CHECK(s.raw_pairs <= cfg.max_raw_pairs);
    CHECK(s.length <= cfg.max_gates);
}

SearchConfig small_config() {
    SearchConfig cfg;
    cfg.population_size = 10;
    cfg.max_generations = 6;
    cfg.convergence_patience = 50;
    cfg.eval_samples = 2000;
    cfg.final_eval_samples = 4000;
    cfg.max_registers = 3;
    cfg.max_raw_pairs = 4;
    cfg.max_gates = 4;
    cfg.output_pairs = 1;
    cfg.seed = 11;
    return cfg;
}

}  // namespace

TEST_CASE("the good-gate subset is exactly the stabilizer of the perfect joint code") {
    const GateTables& t = GateTables::instance();
    const std::vector<uint16_t> good = good_gate_ids(t);
    // Orbit-stabilizer: the group is transitive on the 16 joint codes, so
    // the stabilizer of (A, A) has 11520 / 16 members.
    CHECK(good.size() == 720);
    std::set<uint16_t> good_set(good.begin(), good.end());
    CHECK(good_set.size() == good.size());
    for (uint16_t id : good) CHECK(t.apply_joint(id, 0b1111) == 0b1111);
    size_t movers = 0;
    for (uint32_t id = 0; id < kNumTwoPairGates; ++id) {
        if (t.apply_joint(static_cast<uint16_t>(id), 0b1111) != 0b1111) ++movers;
    }
    CHECK(movers == kNumTwoPairGates - good.size());
    CHECK(good_set.count(t.cnot_id) == 1);
    CHECK(good_set.count(t.cz_id) == 1);
    CHECK(good_set.count(t.swap_id) == 1);
}

TEST_CASE("the default measurement set is the three verdicts a perfect pair passes") {
    const auto& defaults = default_measurements();
    REQUIRE(defaults.size() == 3);
    std::set<std::pair<int, int>> seen;
    for (const auto& [basis, mode] : defaults) {
        CHECK(measurement_passes(basis, mode, 3));  // A always passes
        seen.insert({static_cast<int>(basis), static_cast<int>(mode)});
    }
    CHECK(seen.size() == 3);
    // Each error code fails at least one of them, so the set can select.
    for (uint8_t code = 0; code < 3; ++code) {
        bool rejected_somewhere = false;
        for (const auto& [basis, mode] : defaults) {
            if (!measurement_passes(basis, mode, code)) rejected_somewhere = true;
        }
        CHECK(rejected_somewhere);
    }
}

TEST_CASE("build_passthrough keeps k fresh pairs and accepts with certainty") {
    for (uint32_t k : {1u, 2u, 5u}) {
        const Circuit c = build_passthrough(k);
        CHECK(is_valid(c));
        const CircuitStats s = circuit_stats(c);
        CHECK(s.length == 0);
        CHECK(s.raw_pairs == k);
        CHECK(s.outputs == k);
        CHECK(s.register_width == k + 1);
    }
    NoiseConfig noise;
    noise.f_in = 0.85;
    const ExactResult r = run_exact(build_passthrough(2), noise);
    CHECK(r.report.p_success.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.report.f_out.value == doctest::Approx(0.85).epsilon(1e-12));
}

TEST_CASE("every mutant passes validation and stays within bounds") {
    const GateTables& t = GateTables::instance();
    Xoshiro256 rng(2024, 0);

    SearchConfig restricted;
    restricted.max_registers = 4;
    restricted.max_raw_pairs = 6;
    restricted.max_gates = 12;
    restricted.output_pairs = 1;

    SearchConfig full = restricted;
    full.good_gates_only = false;
    full.all_measurements = true;
    full.max_registers = 5;
    full.output_pairs = 2;

    Circuit walker = build_single_selection(MeasureBasis::kZ);
    walker.register_width = restricted.max_registers;
    for (int i = 0; i < 5000; ++i) {
        walker = mutate(walker, rng, restricted, t);
        const auto problems = validate(walker);
        if (!problems.empty()) {
            CAPTURE(problems.front());
            REQUIRE(problems.empty());
        }
        check_within_bounds(walker, restricted);
        CHECK(walker.register_width == restricted.max_registers);
        CHECK(walker.output_pairs == std::vector<uint32_t>{0});
    }

    Circuit pair_walker = build_passthrough(2);
    pair_walker.register_width = full.max_registers;
    for (int i = 0; i < 5000; ++i) {
        pair_walker = mutate(pair_walker, rng, full, t);
        const auto problems = validate(pair_walker);
        if (!problems.empty()) {
            CAPTURE(problems.front());
            REQUIRE(problems.empty());
        }
        check_within_bounds(pair_walker, full);
    }
}

TEST_CASE("restricted move sets only introduce good gates and default verdicts") {
    const GateTables& t = GateTables::instance();
    const std::vector<uint16_t> good = good_gate_ids(t);
    const std::set<uint16_t> good_set(good.begin(), good.end());
    const auto& defaults = default_measurements();

    SearchConfig cfg;
    cfg.max_registers = 4;
    cfg.max_raw_pairs = 6;
    cfg.max_gates = 10;
    cfg.output_pairs = 1;

    Xoshiro256 rng(99, 0);
    Circuit c = build_passthrough(1);
    c.register_width = cfg.max_registers;
    for (int i = 0; i < 2000; ++i) {
        c = mutate(c, rng, cfg, t);
        for (const Op& op : c.ops) {
            if (const auto* g = std::get_if<BPGateOp>(&op)) {
                CHECK(good_set.count(pack_gate_id(g->params)) == 1);
            } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
                const bool known =
                    std::find(defaults.begin(), defaults.end(),
                              std::make_pair(m->basis, m->mode)) != defaults.end();
                CHECK(known);
            } else {
                // The restricted move set never inserts pair permutations.
                CHECK(std::get_if<PairPermuteOp>(&op) == nullptr);
            }
        }
    }
}

TEST_CASE("a circuit with no ops can only receive an insert") {
    // An empty op list leaves the output dead, so this input sits outside
    // validate()'s domain; mutate must still insert (nothing else applies)
    // and repair must hand back a valid circuit.
    Circuit empty;
    empty.register_width = 3;
    empty.output_pairs = {0};

    SearchConfig cfg;
    cfg.max_registers = 3;
    cfg.max_raw_pairs = 3;
    cfg.max_gates = 3;
    cfg.output_pairs = 1;
    cfg.insert_weight = 0.0;
    cfg.delete_weight = 1.0;  // deletes would be picked if they were possible

    Xoshiro256 rng(5, 0);
    for (int i = 0; i < 50; ++i) {
        const Circuit m = mutate(empty, rng, cfg);
        CHECK(!m.ops.empty());
        CHECK(is_valid(m));
    }
}

TEST_CASE("deleting an op and re-inserting it at the same index is the identity") {
    const Circuit c = build_double_selection(DoubleSelectionVariant::kZX);
    for (size_t i = 0; i < c.ops.size(); ++i) {
        Circuit edited = c;
        const Op removed = edited.ops[i];
        edited.ops.erase(edited.ops.begin() + static_cast<long>(i));
        edited.ops.insert(edited.ops.begin() + static_cast<long>(i), removed);
        CHECK(edited == c);
    }
}

TEST_CASE("crossover of a circuit with itself returns it unchanged") {
    SearchConfig cfg;
    cfg.max_registers = 4;
    cfg.max_raw_pairs = 6;
    cfg.max_gates = 12;

    for (Circuit c : {build_single_selection(MeasureBasis::kX),
                      build_double_selection(DoubleSelectionVariant::kXZ),
                      build_truncated_hashing(4, 2)}) {
        c.register_width = cfg.max_registers;
        for (uint64_t stream = 0; stream < 20; ++stream) {
            Xoshiro256 rng(31, stream);
            CHECK(crossover(c, c, rng, cfg) == c);
        }
    }
}

TEST_CASE("a splice at point zero returns the second parent's ops") {
    SearchConfig cfg;
    cfg.max_registers = 3;
    cfg.max_raw_pairs = 4;
    cfg.max_gates = 4;

    Circuit a = build_single_selection(MeasureBasis::kZ);
    a.register_width = 3;
    Circuit b = build_double_selection(DoubleSelectionVariant::kZX);
    REQUIRE(a.register_width == b.register_width);
    REQUIRE(a.output_pairs == b.output_pairs);

    const uint32_t n_cuts = static_cast<uint32_t>(std::min(a.ops.size(), b.ops.size())) + 1;
    bool tested = false;
    for (uint64_t stream = 0; stream < 1000 && !tested; ++stream) {
        Xoshiro256 probe(7, stream);
        if (probe.below(n_cuts) != 0) continue;
        Xoshiro256 rng(7, stream);
        const Circuit child = crossover(a, b, rng, cfg);
        CHECK(child.ops == b.ops);
        CHECK(child == b);
        tested = true;
    }
    REQUIRE(tested);
}

TEST_CASE("crossover offspring are valid and parents must be compatible") {
    const GateTables& t = GateTables::instance();
    SearchConfig cfg;
    cfg.max_registers = 4;
    cfg.max_raw_pairs = 6;
    cfg.max_gates = 8;
    cfg.output_pairs = 1;

    // Evolve a diverse pool, then splice random pairs from it.
    Xoshiro256 rng(404, 0);
    std::vector<Circuit> pool;
    Circuit c = build_single_selection(MeasureBasis::kZ);
    c.register_width = cfg.max_registers;
    for (int i = 0; i < 40; ++i) {
        c = mutate(c, rng, cfg, t);
        pool.push_back(c);
    }
    for (int i = 0; i < 2000; ++i) {
        const Circuit& a = pool[rng.below(static_cast<uint32_t>(pool.size()))];
        const Circuit& b = pool[rng.below(static_cast<uint32_t>(pool.size()))];
        const Circuit child = crossover(a, b, rng, cfg);
        const auto problems = validate(child);
        if (!problems.empty()) {
            CAPTURE(problems.front());
            REQUIRE(problems.empty());
        }
        check_within_bounds(child, cfg);
    }

    Circuit narrow = build_single_selection(MeasureBasis::kZ);
    CHECK_THROWS_AS((void)crossover(narrow, pool.front(), rng, cfg), std::invalid_argument);
    Circuit other_outputs = pool.front();
    other_outputs.output_pairs = {1};
    CHECK_THROWS_AS((void)crossover(pool.front(), other_outputs, rng, cfg),
                    std::invalid_argument);
}

TEST_CASE("cost scores rank reports and guard against unusable ones") {
    MetricsReport r;
    r.metrics_available = false;
    CostFunction f_out;
    CHECK(f_out.score(r) == -std::numeric_limits<double>::infinity());

    r.metrics_available = true;
    r.exact = false;
    r.accepted_count = 5;
    r.f_out = {0.97, 0.01};
    CHECK(f_out.score(r) == -std::numeric_limits<double>::infinity());
    CHECK(f_out.score(r, 5) == doctest::Approx(0.97));

    r.accepted_count = 5000;
    r.f_a = {0.8, 0.01};
    r.f_l = Estimate{0.9, 0.01};
    r.mutual_info = Estimate{0.2, 0.01};
    CHECK(f_out.score(r) == doctest::Approx(0.97));
    CostFunction f_a{CostKind::kFA};
    CHECK(f_a.score(r) == doctest::Approx(0.8));
    CostFunction f_l{CostKind::kFL};
    CHECK(f_l.score(r) == doctest::Approx(0.9));
    CostFunction f_l_minus_i{CostKind::kFLMinusI};
    f_l_minus_i.mi_weight = 2.0;
    CHECK(f_l_minus_i.score(r) == doctest::Approx(0.9 - 2.0 * 0.2));

    r.f_l.reset();
    CHECK(f_l.score(r) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("infeasible configurations are rejected up front") {
    NoiseConfig noise;
    CostFunction cost;

    SearchConfig bad = small_config();
    bad.output_pairs = 3;  // k >= r
    CHECK_THROWS_AS((void)optimize(bad, noise, cost), std::invalid_argument);

    bad = small_config();
    bad.population_size = 1;
    CHECK_THROWS_AS((void)optimize(bad, noise, cost), std::invalid_argument);

    bad = small_config();
    bad.insert_weight = bad.delete_weight = bad.mutate_params_weight = bad.swap_weight = 0.0;
    CHECK_THROWS_AS((void)optimize(bad, noise, cost), std::invalid_argument);

    bad = small_config();
    bad.delete_weight = -1.0;
    CHECK_THROWS_AS((void)optimize(bad, noise, cost), std::invalid_argument);

    bad = small_config();
    bad.crossover_rate = 1.5;
    CHECK_THROWS_AS((void)optimize(bad, noise, cost), std::invalid_argument);

    bad = small_config();
    bad.eval_samples = 0;
    CHECK_THROWS_AS((void)optimize(bad, noise, cost), std::invalid_argument);

    bad = small_config();
    bad.max_raw_pairs = 0;
    CHECK_THROWS_AS((void)optimize(bad, noise, cost), std::invalid_argument);

    CostFunction logical{CostKind::kFL};
    CHECK_THROWS_AS((void)optimize(small_config(), noise, logical), std::invalid_argument);
    const StabilizerCode five = StabilizerCode::five_qubit();
    logical.code = &five;  // k = 1 but the code needs 5 outputs
    CHECK_THROWS_AS((void)optimize(small_config(), noise, logical), std::invalid_argument);

    NoiseConfig bad_noise;
    bad_noise.f_in = 1.5;
    CHECK_THROWS_AS((void)optimize(small_config(), bad_noise, cost), std::invalid_argument);
}

TEST_CASE("zero generations return the best of the seeded population") {
    SearchConfig cfg = small_config();
    cfg.max_generations = 0;
    NoiseConfig noise;
    noise.f_in = 0.9;
    CostFunction cost;  // f_out

    const SearchResult result = optimize(cfg, noise, cost);
    REQUIRE(result.log.size() == 1);
    CHECK(result.log[0].generation == 0);
    CHECK(is_valid(result.best));
    check_within_bounds(result.best, cfg);

    // Single selection sits in the seeded population, so elitism can only
    // return something at least as good as its exact score.
    const double baseline =
        cost.score(run_exact(build_single_selection(MeasureBasis::kZ), noise).report);
    CHECK(baseline == doctest::Approx(365.0 / 394.0).epsilon(1e-12));
    CHECK(result.best_recorded_cost >= baseline - 1e-12);
}

TEST_CASE("the search beats the single-selection baseline on output fidelity") {
    SearchConfig cfg;
    cfg.population_size = 24;
    cfg.max_generations = 12;
    cfg.convergence_patience = 12;
    cfg.max_registers = 3;
    cfg.max_raw_pairs = 4;
    cfg.max_gates = 4;
    cfg.output_pairs = 1;
    cfg.final_eval_samples = 20000;
    cfg.seed = 7;

    NoiseConfig noise;
    noise.f_in = 0.9;
    noise.p2 = 0.99;
    CostFunction cost;  // f_out

    const SearchResult result = optimize(cfg, noise, cost);
    const double baseline =
        cost.score(run_exact(build_single_selection(MeasureBasis::kZ), noise).report);
    CHECK(result.best_recorded_cost >= baseline - 1e-12);
    CHECK(is_valid(result.best));
    check_within_bounds(result.best, cfg);

    // Recorded best never decreases: costs are frozen and selection is elitist.
    for (size_t i = 1; i < result.log.size(); ++i) {
        CHECK(result.log[i].best_cost >= result.log[i - 1].best_cost);
    }

    // The final Monte Carlo re-evaluation describes the same circuit: with
    // exact search-time scores the two agree to a few standard errors.
    CHECK(std::abs(result.final_report.f_out.value - result.best_recorded_cost) <=
          5.0 * result.final_report.f_out.se + 1e-9);
}

TEST_CASE("identical configurations reproduce the identical search byte for byte") {
    SearchConfig cfg = small_config();
    cfg.exact_eval_registers = 0;  // force the Monte Carlo evaluation path
    NoiseConfig noise;
    noise.f_in = 0.88;
    noise.p2 = 0.985;
    CostFunction cost{CostKind::kFA};

    const SearchResult a = optimize(cfg, noise, cost);
    const SearchResult b = optimize(cfg, noise, cost);
    CHECK(a.best == b.best);
    CHECK(circuit_to_json(a.best).dump() == circuit_to_json(b.best).dump());
    CHECK(a.best_recorded_cost == b.best_recorded_cost);
    CHECK(a.final_report == b.final_report);
    CHECK(search_log_csv(a.log) == search_log_csv(b.log));

    for (size_t i = 1; i < a.log.size(); ++i) {
        CHECK(a.log[i].best_cost >= a.log[i - 1].best_cost);
    }

    SearchConfig other_seed = cfg;
    other_seed.seed = cfg.seed + 1;
    const SearchResult c = optimize(other_seed, noise, cost);
    CHECK(is_valid(c.best));  // may or may not differ; only validity is guaranteed
}

TEST_CASE("a small logical-fidelity search on the five-qubit code runs end to end") {
    const StabilizerCode five = StabilizerCode::five_qubit();
    SearchConfig cfg;
    cfg.population_size = 8;
    cfg.max_generations = 2;
    cfg.eval_samples = 1500;
    cfg.final_eval_samples = 6000;
    cfg.max_registers = 6;
    cfg.max_raw_pairs = 8;
    cfg.max_gates = 6;
    cfg.output_pairs = 5;
    cfg.seed = 3;

    NoiseConfig noise;
    noise.f_in = 0.95;
    noise.p2 = 0.995;

    CostFunction cost{CostKind::kFLMinusI};
    cost.code = &five;

    const SearchResult result = optimize(cfg, noise, cost);
    CHECK(is_valid(result.best));
    check_within_bounds(result.best, cfg);
    CHECK(result.best.output_pairs.size() == 5);
    REQUIRE(result.final_report.f_l.has_value());
    CHECK(result.final_report.f_l->value >= 0.0);
    CHECK(result.final_report.f_l->value <= 1.0);
    REQUIRE(result.final_report.mutual_info.has_value());
}

TEST_CASE("the search log serializes one row per generation") {
    const std::vector<GenerationLog> log = {
        {0, 0.5, 0.25, 3},
        {1, 0.75, 0.5, 2},
    };
    const std::string csv = search_log_csv(log);
    CHECK(csv == "generation,best_cost,median_cost,best_length\n0,0.5,0.25,3\n1,0.75,0.5,2\n");
}
