// Release gate for the library. Each numbered criterion is a self-contained
// check of one promised property, run at its stated tolerance, and prints
// exactly one PASS/FAIL line; ctest registers one entry per criterion so a
// red line names the property that broke instead of a wall of assertions.
//
//   acceptance --criterion 4    run one criterion
//   acceptance --all            run all eight in order (default)
//
// Exit status is 0 only if every requested criterion passed.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bellperm/bench.hpp"
#include "bellperm/circuit.hpp"
#include "bellperm/circuit_json.hpp"
#include "bellperm/clifford_enum.hpp"
#include "bellperm/gate_tables.hpp"
#include "bellperm/metrics.hpp"
#include "bellperm/optimizer.hpp"
#include "bellperm/rng.hpp"
#include "bellperm/sim.hpp"
#include "bellperm/stabilizer_code.hpp"
#include "bellperm/tableau.hpp"
#include "random_circuit.hpp"

namespace {

using namespace bellperm;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// |estimate - reference| within n standard errors (tiny floor so exact
// matches with se = 0 count as agreement).
bool within_se(const Estimate& e, double reference, double n_sigma) {
    return std::abs(e.value - reference) <= n_sigma * e.se + 1e-9;
}

// ---------------------------------------------------------------------------
// 1. Derived group sizes: 24 single-qubit gates collapsing to 6 phaseless
//    classes, 720 two-qubit classes split into 20 cosets, and 11520 distinct
//    two-pair code permutations (with 24 distinct single-pair ones).

Outcome criterion_counts() {
    const GateTables& t = GateTables::instance();

    const size_t singles = enumerate_single_qubit_cliffords().size();
    const size_t classes1 = enumerate_single_qubit_phaseless().size();
    const size_t classes2 = enumerate_two_qubit_phaseless().size();

    std::set<std::array<uint8_t, 4>> pair_actions;
    for (uint8_t perm = 0; perm < number_of_local_perms(); ++perm) {
        std::array<uint8_t, 4> action{};
        for (uint8_t code = 0; code < 4; ++code) action[code] = apply_pair_permute(t, perm, code);
        pair_actions.insert(action);
    }

    std::set<uint8_t> cosets;
    for (const GateFactor& f : t.class_factor) cosets.insert(f.coset);

    const auto fused = fused_two_pair_table(t);
    const std::set<std::array<uint8_t, 16>> joint_actions(fused.begin(), fused.end());

    Outcome o;
    o.pass = singles == 24 && classes1 == kNumLocalClasses && classes2 == kNumTwoQubitClasses &&
             pair_actions.size() == 24 && cosets.size() == kNumCosets &&
             fused.size() == kNumTwoPairGates && joint_actions.size() == kNumTwoPairGates;
    std::ostringstream d;
    d << singles << " single-qubit gates / " << classes1 << " phaseless classes, "
      << pair_actions.size() << " single-pair code permutations, " << classes2
      << " two-qubit classes in " << cosets.size() << " cosets, " << joint_actions.size()
      << " distinct two-pair code permutations (want 24/6/24/720/20/11520)";
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 2. Every one of the 11520 table-driven code permutations equals direct
//    stabilizer conjugation on all 16 joint codes: 184,320 equality checks.

Outcome criterion_oracle() {
    const GateTables& t = GateTables::instance();
    const auto& classes = enumerate_two_qubit_phaseless();

    // The one-sided Pauli layer as an explicit Clifford on the two-pair
    // network (Alice qubits 0 and 1): conjugating by a Pauli flips the sign
    // of every generator image that anticommutes with it.
    std::array<CliffordGate, 16> side_pauli;
    for (int pa = 0; pa < 4; ++pa) {
        for (int pb = 0; pb < 4; ++pb) {
            const PauliOperator p =
                PauliOperator::single(4, 0, static_cast<PauliLetter>(pa)) *
                PauliOperator::single(4, 1, static_cast<PauliLetter>(pb));
            std::vector<PauliOperator> ix, iz;
            for (uint32_t q = 0; q < 4; ++q) {
                PauliOperator x = PauliOperator::single(4, q, kPauliX);
                PauliOperator z = PauliOperator::single(4, q, kPauliZ);
                if (!x.commutes_with(p)) x = -x;
                if (!z.commutes_with(p)) z = -z;
                ix.push_back(x);
                iz.push_back(z);
            }
            side_pauli[pa * 4 + pb] = CliffordGate::from_images(std::move(ix), std::move(iz));
        }
    }

    std::vector<bool> covered(kNumTwoPairGates, false);
    uint64_t checks = 0, mismatches = 0;
    for (size_t ci = 0; ci < classes.size(); ++ci) {
        const CliffordGate bilat = bilateral(classes[ci], 2);
        const GateFactor f = t.class_factor[ci];
        // Bilateral layer applied once per input; the 16 Pauli variants then
        // reuse the conjugated network.
        std::array<StabilizerTableau, 16> conjugated;
        for (uint32_t joint = 0; joint < 16; ++joint) {
            StabilizerTableau net = bell_pair_tableau(
                {static_cast<uint8_t>(joint >> 2), static_cast<uint8_t>(joint & 3)});
            net.apply(bilat);
            conjugated[joint] = std::move(net);
        }
        for (uint8_t pa = 0; pa < 4; ++pa) {
            for (uint8_t pb = 0; pb < 4; ++pb) {
                const uint16_t id = pack_gate_id({f.coset, f.local_a, f.local_b, pa, pb});
                covered[id] = true;
                for (uint32_t joint = 0; joint < 16; ++joint) {
                    StabilizerTableau net = conjugated[joint];
                    net.apply(side_pauli[pa * 4 + pb]);
                    const uint8_t want = static_cast<uint8_t>((read_pair_code(net, 0, 2) << 2) |
                                                              read_pair_code(net, 1, 2));
                    ++checks;
                    if (t.apply_joint(id, static_cast<uint8_t>(joint)) != want) ++mismatches;
                }
            }
        }
    }
    const auto ids = static_cast<size_t>(std::count(covered.begin(), covered.end(), true));

    Outcome o;
    o.pass = mismatches == 0 && checks == 184320 && ids == kNumTwoPairGates;
    std::ostringstream d;
    d << checks << " tableau-conjugation checks over " << ids << " gate ids, " << mismatches
      << " mismatches";
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 3. Per-gate cost: flat for the two-bit backend across 1e2..1e6 pairs,
//    growing >= 10x for the dense-row tableau backend. Timing on a shared
//    box is noisy, so the criterion passes if any of three attempts shows
//    both margins.

Outcome criterion_scaling() {
    const std::vector<uint32_t> sizes = {100, 10000, 1000000};
    Outcome o;
    for (int attempt = 0; attempt < 3 && !o.pass; ++attempt) {
        const auto points = run_scaling_benchmark(sizes, 0.3, 20260814 + attempt);
        double diag_min = 0.0, diag_max = 0.0, tab_first = 0.0, tab_last = 0.0;
        size_t diag_points = 0, tab_points = 0;
        for (const BenchPoint& p : points) {
            if (p.backend == "diagonal") {
                diag_min = diag_points == 0 ? p.ns_per_gate : std::min(diag_min, p.ns_per_gate);
                diag_max = std::max(diag_max, p.ns_per_gate);
                ++diag_points;
            } else {
                if (p.n_pairs == sizes.front()) tab_first = p.ns_per_gate;
                if (p.n_pairs == sizes.back()) tab_last = p.ns_per_gate;
                ++tab_points;
            }
        }
        const double spread = diag_max / diag_min;
        const double growth = tab_last / tab_first;
        o.pass = diag_points == sizes.size() && tab_points == sizes.size() && spread < 2.0 &&
                 growth >= 10.0;
        std::ostringstream d;
        d << "diagonal " << fmt(diag_min) << ".." << fmt(diag_max) << " ns/gate (" << fmt(spread)
          << "x spread, want < 2x); tableau grows " << fmt(growth)
          << "x from 1e2 to 1e6 pairs (want >= 10x)";
        o.detail = d.str();
    }
    return o;
}

// ---------------------------------------------------------------------------
// 4. Z-basis single selection on F_in = 0.9 Werner pairs, no gate noise:
//    exact engine reproduces the closed form (F_out = 365/394, P = 197/225)
//    to 1e-9, and 1e5 Monte Carlo trajectories agree within 3 SE.

Outcome criterion_single_selection() {
    const double want_f = 365.0 / 394.0;   // 0.926395939...
    const double want_p = 197.0 / 225.0;   // 0.875555555...
    const Circuit c = build_single_selection(MeasureBasis::kZ);
    NoiseConfig cfg;
    cfg.f_in = 0.9;

    const ExactResult exact = run_exact(c, cfg);
    const double df = std::abs(exact.report.f_out.value - want_f);
    const double dp = std::abs(exact.report.p_success.value - want_p);

    const MetricsReport mc = run_monte_carlo(c, cfg, 100000, 20260814);
    const bool mc_ok = mc.sample_count == 100000 && mc.p_success.se > 0.0 &&
                       std::abs(mc.f_out.value - want_f) <= 3.0 * mc.f_out.se &&
                       std::abs(mc.p_success.value - want_p) <= 3.0 * mc.p_success.se;

    Outcome o;
    o.pass = df <= 1e-9 && dp <= 1e-9 && mc_ok;
    std::ostringstream d;
    d << "exact F_out = " << fmt(exact.report.f_out.value) << " (|diff| = " << fmt(df)
      << "), P = " << fmt(exact.report.p_success.value) << " (|diff| = " << fmt(dp)
      << "); MC 1e5: F_out = " << fmt(mc.f_out.value) << " +- " << fmt(mc.f_out.se) << ", P = "
      << fmt(mc.p_success.value) << " +- " << fmt(mc.p_success.se)
      << (mc_ok ? " (within 3 SE)" : " (outside 3 SE)");
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 5. Engine cross-validation: 50 seeded random circuits under randomized
//    noise; a case passes when every metric the Monte Carlo engine reports
//    lies within 3 SE of the exact value. At 3 sigma a few statistical
//    misses are expected, so the bar is 47 of 50.

Outcome criterion_cross_validation() {
    testgen::CircuitBounds bounds;  // 6 registers, 6 raw pairs, 12 gates
    bounds.only_default_measurements = true;

    int passed = 0;
    std::ostringstream misses;
    for (uint64_t case_i = 0; case_i < 50; ++case_i) {
        Xoshiro256 rng(0xC5C5C5C5ULL, case_i);
        const Circuit c = testgen::random_circuit(rng, bounds);
        NoiseConfig cfg;
        cfg.f_in = 0.75 + 0.2 * rng.uniform();
        cfg.p2 = 0.95 + 0.045 * rng.uniform();
        if (rng.below(3) == 0) cfg.eta = 0.95 + 0.05 * rng.uniform();
        if (rng.below(4) == 0) cfg.independent_local_flips = true;
        if (rng.below(4) == 0) {
            const double keep = 0.97 + 0.03 * rng.uniform();
            const double leak = (1.0 - keep) / 3.0;
            cfg.local_channel = {{keep, leak, leak, leak}};
        }

        const ExactResult exact = run_exact(c, cfg);
        const MetricsReport mc = run_monte_carlo(c, cfg, 40000, 0xAB0000 + case_i);

        bool ok = within_se(mc.p_success, exact.report.p_success.value, 3.0) &&
                  mc.metrics_available == exact.report.metrics_available;
        if (ok && mc.metrics_available) {
            ok = within_se(mc.f_out, exact.report.f_out.value, 3.0) &&
                 within_se(mc.f_a, exact.report.f_a.value, 3.0);
            if (mc.mutual_info && exact.report.mutual_info) {
                ok = ok && within_se(*mc.mutual_info, exact.report.mutual_info->value, 3.0);
            }
        }
        if (ok) ++passed;
        else misses << ' ' << case_i;
    }

    Outcome o;
    o.pass = passed >= 47;
    std::ostringstream d;
    d << passed << "/50 cases with every reported metric within 3 SE of exact (want >= 47)";
    if (passed < 50) d << "; missed cases:" << misses.str();
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 6. Code-rule equivalence: on the 5-qubit code the weight-threshold rule
//    accepts exactly the patterns the lookup decoder recovers verbatim, on
//    all 4^5 = 1024 patterns (the decoder additionally accepts the 240
//    degenerate recoveries). The 11-qubit code's distance 5 is re-derived by
//    brute force: no logical operator of weight <= 4 exists.

Outcome criterion_code_rules() {
    const StabilizerCode five = StabilizerCode::five_qubit();
    const PatternDecoder decoder(five);

    int exact_n = 0, degenerate_n = 0, logical_n = 0;
    bool equivalence = true, superset = true;
    for (uint32_t x = 0; x < 32; ++x) {
        for (uint32_t z = 0; z < 32; ++z) {
            const ErrorPattern p{x, z};
            const bool threshold = p.weight() <= five.correctable_weight();
            const DecodeResult r = decoder.classify(p);
            exact_n += r == DecodeResult::kExactRecovery;
            degenerate_n += r == DecodeResult::kDegenerateRecovery;
            logical_n += r == DecodeResult::kLogicalError;
            equivalence &= threshold == (r == DecodeResult::kExactRecovery);
            superset &= !threshold || decoder.corrects(p);
        }
    }

    const StabilizerCode eleven = StabilizerCode::eleven_qubit();
    const int w = eleven.min_logical_weight();

    Outcome o;
    o.pass = equivalence && superset && exact_n == 16 && degenerate_n == 240 &&
             logical_n == 768 && five.distance() == 3 && eleven.distance() == 5 && w == 5;
    std::ostringstream d;
    d << "[[5,1,3]]: threshold <-> exact recovery on all 1024 patterns (" << exact_n << "/"
      << degenerate_n << "/" << logical_n << " exact/degenerate/logical); [[11,1,"
      << eleven.distance() << "]]: lightest logical operator has weight " << w;
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 7. Optimizer orderings at the F_in = 0.9, p2 = 0.99 operating point with
//    fixed seeds: (a) the F_out-optimized 1-output circuit is at least as
//    good as double selection (exact evaluation on both sides); (b) with the
//    5-qubit code on 5 outputs (n <= 10, r <= 7), the F_L-optimized winner
//    scores F_L at least as high as the F_A-optimized winner and as the
//    unpurified baseline, all three evaluated with the same 1e5-sample run.

Outcome criterion_optimizer() {
    NoiseConfig noise;
    noise.f_in = 0.9;
    noise.p2 = 0.99;

    // (a) 1-output search against the better double-selection variant.
    SearchConfig a;
    a.population_size = 80;
    a.max_generations = 60;
    a.convergence_patience = 20;
    a.max_registers = 4;
    a.max_raw_pairs = 6;
    a.max_gates = 10;
    a.output_pairs = 1;
    a.seed = 20260814;
    const SearchResult won = optimize(a, noise, CostFunction{CostKind::kFOut});
    const double f_win = run_exact(won.best, noise).report.f_out.value;
    const double f_ds = std::max(
        run_exact(build_double_selection(DoubleSelectionVariant::kZX), noise).report.f_out.value,
        run_exact(build_double_selection(DoubleSelectionVariant::kXZ), noise).report.f_out.value);
    const bool ok_a = f_win >= f_ds - 1e-12;

    // (b) 5-output searches; the two cost functions share every other knob.
    const StabilizerCode five = StabilizerCode::five_qubit();
    SearchConfig b;
    b.population_size = 64;
    b.max_generations = 60;
    b.convergence_patience = 15;
    b.max_registers = 7;
    b.max_raw_pairs = 10;
    b.max_gates = 14;
    b.output_pairs = 5;
    b.seed = 20260814;
    const SearchResult won_fl = optimize(b, noise, CostFunction{CostKind::kFL, &five});
    const SearchResult won_fa = optimize(b, noise, CostFunction{CostKind::kFA});

    SimOptions ev;
    ev.code = &five;
    const auto f_l_of = [&](const Circuit& c) {
        const MetricsReport r = run_monte_carlo(c, noise, 100000, 0xE7A1, ev);
        return r.f_l ? r.f_l->value : -1.0;
    };
    const double fl_fl = f_l_of(won_fl.best);
    const double fl_fa = f_l_of(won_fa.best);
    const double fl_raw = f_l_of(build_passthrough(5));
    const bool ok_b = fl_fl >= fl_fa && fl_fl >= fl_raw;

    Outcome o;
    o.pass = ok_a && ok_b;
    std::ostringstream d;
    d << "(a) F_out " << fmt(f_win) << " vs double selection " << fmt(f_ds)
      << (ok_a ? " (>=)" : " (<)") << "; (b) F_L " << fmt(fl_fl) << " vs F_A-optimized "
      << fmt(fl_fa) << " and unpurified " << fmt(fl_raw) << (ok_b ? " (>= both)" : " (ordering violated)");
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 8. Invariant suites: exact-mode mass conservation at 1e-12, F_A <= F_out
//    on every report, the one-sided Pauli XOR law exhaustively, 1e3
//    serialization round-trips, 1e4 valid mutants/offspring, and
//    byte-identical reruns of every engine.

bool invariant_mass_and_order(std::string& failure) {
    testgen::CircuitBounds bounds;
    uint64_t exact_runs = 0, reports = 0;
    for (uint64_t i = 0; i < 300; ++i) {
        Xoshiro256 rng(0x1A55, i);
        const Circuit c = testgen::random_circuit(rng, bounds);
        NoiseConfig cfg;
        cfg.f_in = 0.6 + 0.4 * rng.uniform();
        cfg.p2 = 0.9 + 0.1 * rng.uniform();
        if (rng.below(3) == 0) cfg.measure_flip = 0.1 * rng.uniform();
        if (rng.below(3) == 0) cfg.independent_local_flips = true;
        if (rng.below(4) == 0) {
            std::array<double, 16> channel{};
            double total = 0.0;
            for (double& w : channel) total += (w = rng.uniform());
            for (double& w : channel) w /= total;
            cfg.gate_channel = channel;
        }
        const ExactResult r = run_exact(c, cfg);
        ++exact_runs;
        if (std::abs(r.report.p_success.value + r.rejected_mass - 1.0) > 1e-12) {
            failure = "exact mass drifted on case " + std::to_string(i);
            return false;
        }
        const MetricsReport* checks[2] = {&r.report, nullptr};
        MetricsReport mc;
        if (i % 5 == 0) {
            mc = run_monte_carlo(c, cfg, 5000, 0x5EED + i);
            checks[1] = &mc;
        }
        for (const MetricsReport* rep : checks) {
            if (!rep || !rep->metrics_available) continue;
            ++reports;
            if (rep->f_a.value > rep->f_out.value + 1e-12) {
                failure = "F_A above F_out on case " + std::to_string(i);
                return false;
            }
        }
    }
    failure = std::to_string(exact_runs) + " exact runs mass-conserving, F_A <= F_out on " +
              std::to_string(reports) + " reports";
    return true;
}

bool invariant_xor_law(std::string& failure) {
    const GateTables& t = GateTables::instance();
    // Masks must form the Klein four-group the Pauli letters do.
    static constexpr uint8_t kProduct[4][4] = {{0, 1, 2, 3},
                                               {1, 0, 3, 2},
                                               {2, 3, 0, 1},
                                               {3, 2, 1, 0}};
    std::set<uint8_t> masks(t.pauli_mask.begin(), t.pauli_mask.end());
    if (masks != std::set<uint8_t>{0, 1, 2, 3}) {
        failure = "one-sided Pauli masks are not a bijection on the codes";
        return false;
    }
    for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
            if ((t.pauli_mask[p] ^ t.pauli_mask[q]) != t.pauli_mask[kProduct[p][q]]) {
                failure = "mask XOR disagrees with the letter product";
                return false;
            }
        }
    }
    uint64_t checks = 0;
    for (uint32_t id = 0; id < kNumTwoPairGates; ++id) {
        GateParams p = unpack_gate_id(static_cast<uint16_t>(id));
        const uint8_t mask = static_cast<uint8_t>((t.pauli_mask[p.pauli_a] << 2) |
                                                  t.pauli_mask[p.pauli_b]);
        p.pauli_a = kPauliI;
        p.pauli_b = kPauliI;
        const uint16_t plain = pack_gate_id(p);
        for (uint8_t joint = 0; joint < 16; ++joint) {
            ++checks;
            if (t.apply_joint(static_cast<uint16_t>(id), joint) !=
                (t.apply_joint(plain, joint) ^ mask)) {
                failure = "gate id " + std::to_string(id) + " violates the XOR layer";
                return false;
            }
        }
    }
    failure = "Pauli layer = code XOR on all " + std::to_string(checks) + " (id, code) pairs";
    return true;
}

bool invariant_round_trip(std::string& failure) {
    const GateTables& t = GateTables::instance();
    testgen::CircuitBounds bounds;
    const std::filesystem::path dir = "acceptance_tmp";
    std::filesystem::create_directories(dir);
    for (uint64_t i = 0; i < 1000; ++i) {
        Xoshiro256 rng(0x0DDC0DE, i);
        const Circuit c = testgen::random_circuit(rng, bounds);
        if (circuit_from_json(circuit_to_json(c, t), t) != c) {
            failure = "JSON round-trip changed circuit " + std::to_string(i);
            return false;
        }
        if (i % 100 == 0) {
            const std::string path = (dir / ("rt_" + std::to_string(i) + ".bpcirc.json")).string();
            write_circuit_file(path, c, t);
            if (read_circuit_file(path, t) != c) {
                failure = "file round-trip changed circuit " + std::to_string(i);
                return false;
            }
        }
    }
    std::filesystem::remove_all(dir);
    failure = "1000 circuits round-tripped (10 through files)";
    return true;
}

bool invariant_mutants(std::string& failure) {
    SearchConfig restricted;
    restricted.max_registers = 5;
    restricted.max_raw_pairs = 6;
    restricted.max_gates = 10;
    restricted.output_pairs = 2;
    SearchConfig open = restricted;
    open.good_gates_only = false;
    open.all_measurements = true;

    Circuit walker = build_truncated_hashing(4, 2);
    walker.register_width = restricted.max_registers;
    Circuit other = walker;
    uint64_t cases = 0;
    for (uint64_t i = 0; i < 5000; ++i) {
        Xoshiro256 rng(0x300D, i);
        const SearchConfig& cfg = (i & 1) ? open : restricted;
        walker = mutate(walker, rng, cfg);
        ++cases;
        if (!is_valid(walker)) {
            failure = "mutant " + std::to_string(i) + " failed validation";
            return false;
        }
        Circuit child = crossover(walker, other, rng, cfg);
        ++cases;
        if (!is_valid(child)) {
            failure = "offspring " + std::to_string(i) + " failed validation";
            return false;
        }
        if (i % 7 == 0) other = std::move(child);
    }
    failure = std::to_string(cases) + " mutants/offspring all valid";
    return true;
}

bool invariant_reruns(std::string& failure) {
    NoiseConfig cfg;
    cfg.f_in = 0.88;
    cfg.p2 = 0.985;
    const Circuit c = build_truncated_hashing(4, 2);

    std::vector<std::string> dumps;
    for (const int threads : {0, 1, 3}) {
        SimOptions opt;
        opt.threads = threads;
        dumps.push_back(metrics_to_json(run_monte_carlo(c, cfg, 50000, 77, opt)).dump());
    }
    dumps.push_back(metrics_to_json(run_monte_carlo_serial(c, cfg, 50000, 77)).dump());
    dumps.push_back(metrics_to_json(run_monte_carlo(c, cfg, 50000, 77)).dump());
    if (std::set<std::string>(dumps.begin(), dumps.end()).size() != 1) {
        failure = "Monte Carlo reruns differ across engines/threads";
        return false;
    }

    if (metrics_to_json(run_exact(c, cfg).report) != metrics_to_json(run_exact(c, cfg).report)) {
        failure = "exact engine reruns differ";
        return false;
    }

    if (GateTables::derive().hash() != GateTables::derive().hash()) {
        failure = "table derivation is not deterministic";
        return false;
    }

    SearchConfig s;
    s.population_size = 10;
    s.max_generations = 3;
    s.convergence_patience = 3;
    s.max_registers = 3;
    s.max_raw_pairs = 4;
    s.max_gates = 4;
    s.output_pairs = 1;
    s.final_eval_samples = 20000;
    s.seed = 5;
    const CostFunction cost{CostKind::kFOut};
    const SearchResult r1 = optimize(s, cfg, cost);
    const SearchResult r2 = optimize(s, cfg, cost);
    if (circuit_to_json(r1.best).dump() != circuit_to_json(r2.best).dump() ||
        search_log_csv(r1.log) != search_log_csv(r2.log) ||
        metrics_to_json(r1.final_report) != metrics_to_json(r2.final_report)) {
        failure = "search reruns differ";
        return false;
    }

    failure = "MC (4 engine/thread variants), exact, derivation, and search reruns byte-identical";
    return true;
}

Outcome criterion_invariants() {
    using Suite = bool (*)(std::string&);
    const std::pair<const char*, Suite> suites[] = {
        {"mass/order", invariant_mass_and_order},
        {"xor-law", invariant_xor_law},
        {"round-trip", invariant_round_trip},
        {"mutants", invariant_mutants},
        {"reruns", invariant_reruns},
    };
    Outcome o;
    o.pass = true;
    std::ostringstream d;
    for (const auto& [name, suite] : suites) {
        std::string note;
        if (!suite(note)) {
            o.pass = false;
            o.detail = std::string(name) + ": " + note;
            return o;
        }
        d << (d.tellp() > 0 ? "; " : "") << note;
    }
    o.detail = d.str();
    return o;
}

// ---------------------------------------------------------------------------

struct Criterion {
    const char* name;
    Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {"group counts", criterion_counts},
    {"oracle equivalence", criterion_oracle},
    {"gate-cost scaling", criterion_scaling},
    {"analytic single selection", criterion_single_selection},
    {"engine cross-validation", criterion_cross_validation},
    {"code-rule equivalence", criterion_code_rules},
    {"optimizer orderings", criterion_optimizer},
    {"invariant suites", criterion_invariants},
};

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;  // 0 = all
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--all") {
            selected = 0;
        } else if (arg == "--criterion" && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N | --all]\n");
            return 2;
        }
    }
    const int count = static_cast<int>(std::size(kCriteria));
    if (selected < 0 || selected > count) {
        std::fprintf(stderr, "criterion must be in 1..%d\n", count);
        return 2;
    }

    bool all_pass = true;
    for (int n = 1; n <= count; ++n) {
        if (selected != 0 && n != selected) continue;
        const Outcome o = kCriteria[n - 1].run();
        std::printf("criterion %d (%s): %s - %s\n", n, kCriteria[n - 1].name,
                    o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
