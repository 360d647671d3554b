#include "bellperm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <list>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace bellperm {

namespace {

constexpr uint8_t kPerfectJoint = 0b1111;  // both pairs A
constexpr double kWorst = -std::numeric_limits<double>::infinity();

// RNG stream tags under the master seed: one stream drives the sequential
// evolutionary loop, every candidate evaluation gets its own derived seed so
// evaluation order or parallelism cannot change results.
constexpr uint64_t kLoopStream = 0x6f70742d6c6f6f70ULL;
constexpr uint64_t kEvalStreamBase = 0x6f70742d6576c100ULL;
constexpr uint64_t kFinalStream = 0x6f70742d66696e1ULL;

std::vector<uint16_t> compute_good_gate_ids(const GateTables& t) {
    std::vector<uint16_t> ids;
    for (uint32_t id = 0; id < kNumTwoPairGates; ++id) {
        if (t.apply_joint(static_cast<uint16_t>(id), kPerfectJoint) == kPerfectJoint)
            ids.push_back(static_cast<uint16_t>(id));
    }
    return ids;
}

// Per-table cache; entries are never invalidated (tables live for the whole
// run) and a std::list keeps references stable across insertions.
const std::vector<uint16_t>& cached_good_gate_ids(const GateTables& t) {
    static std::list<std::pair<const GateTables*, std::vector<uint16_t>>> cache;
    for (const auto& entry : cache) {
        if (entry.first == &t) return entry.second;
    }
    cache.emplace_back(&t, compute_good_gate_ids(t));
    return cache.back().second;
}

GateParams random_gate_params(Xoshiro256& rng, const SearchConfig& cfg, const GateTables& t) {
    if (cfg.good_gates_only) {
        const std::vector<uint16_t>& good = cached_good_gate_ids(t);
        return unpack_gate_id(good[rng.below(static_cast<uint32_t>(good.size()))]);
    }
    return unpack_gate_id(static_cast<uint16_t>(rng.below(kNumTwoPairGates)));
}

std::pair<MeasureBasis, MeasureMode> random_measurement(Xoshiro256& rng,
                                                        const SearchConfig& cfg) {
    if (cfg.all_measurements) {
        return {static_cast<MeasureBasis>(rng.below(3)),
                static_cast<MeasureMode>(rng.below(2))};
    }
    const auto& defaults = default_measurements();
    return defaults[rng.below(static_cast<uint32_t>(defaults.size()))];
}

Op random_op(Xoshiro256& rng, uint32_t width, const SearchConfig& cfg, const GateTables& t) {
    // Permutations only enter the move set alongside the full gate group;
    // the restricted set mirrors gates + verdicts + refills.
    const uint32_t kinds = cfg.good_gates_only ? 3 : 4;
    switch (rng.below(kinds)) {
        case 0:
            return NewPairOp{rng.below(width)};
        case 1: {
            const uint32_t a = rng.below(width);
            uint32_t b = rng.below(width - 1);
            if (b >= a) ++b;
            return BPGateOp{random_gate_params(rng, cfg, t), a, b};
        }
        case 2: {
            const auto [basis, mode] = random_measurement(rng, cfg);
            return MeasureOp{basis, mode, rng.below(width)};
        }
        default:
            return PairPermuteOp{static_cast<uint8_t>(rng.below(number_of_local_perms())),
                                 rng.below(width)};
    }
}

// Rebuilds the op list so the result passes validate() within the raw-pair
// and gate budgets: uses on dead registers get a refill inserted when the
// budget allows and are dropped otherwise, overwrites of live registers and
// degenerate gates are dropped, and dead outputs are refilled at the end.
// The invariant raw_used + dead_outputs <= max_raw_pairs holds throughout,
// so the final refills always fit.  A circuit that is already valid and
// within bounds comes back unchanged.
Circuit repair(const Circuit& raw, const SearchConfig& cfg) {
    Circuit out;
    out.register_width = raw.register_width;
    out.output_pairs = raw.output_pairs;

    const uint32_t width = out.register_width;
    std::vector<char> live(width, 0);
    std::vector<char> is_output(width, 0);
    uint32_t dead_outputs = 0;
    for (uint32_t reg : out.output_pairs) {
        if (reg < width && !is_output[reg]) {
            is_output[reg] = 1;
            ++dead_outputs;
        }
    }

    uint32_t raw_used = 0;
    uint32_t gates = 0;
    const auto acquire = [&](uint32_t reg) {
        if (live[reg]) return true;
        const uint32_t dead_after = dead_outputs - (is_output[reg] ? 1 : 0);
        if (raw_used + 1 + dead_after > cfg.max_raw_pairs) return false;
        out.ops.push_back(NewPairOp{reg});
        ++raw_used;
        live[reg] = 1;
        dead_outputs = dead_after;
        return true;
    };

    for (const Op& op : raw.ops) {
        if (const auto* np = std::get_if<NewPairOp>(&op)) {
            if (np->reg >= width || live[np->reg]) continue;
            acquire(np->reg);
        } else if (const auto* pp = std::get_if<PairPermuteOp>(&op)) {
            if (pp->reg >= width || pp->perm_id >= number_of_local_perms()) continue;
            if (!acquire(pp->reg)) continue;
            out.ops.push_back(*pp);
        } else if (const auto* g = std::get_if<BPGateOp>(&op)) {
            if (g->reg_a >= width || g->reg_b >= width || g->reg_a == g->reg_b) continue;
            if (gates >= cfg.max_gates) continue;
            if (!acquire(g->reg_a) || !acquire(g->reg_b)) continue;
            out.ops.push_back(*g);
            ++gates;
        } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
            if (m->reg >= width) continue;
            // Killing an output must leave room for its final refill.
            const uint32_t dead_after = dead_outputs + (is_output[m->reg] ? 1 : 0);
            if (raw_used + dead_after > cfg.max_raw_pairs) continue;
            if (!acquire(m->reg)) continue;
            out.ops.push_back(*m);
            live[m->reg] = 0;
            dead_outputs = dead_after;
        }
    }

    for (uint32_t reg : out.output_pairs) {
        if (reg < width && !live[reg]) {
            out.ops.push_back(NewPairOp{reg});
            ++raw_used;
            live[reg] = 1;
        }
    }
    out.declared_raw_pairs = raw_used;
    return out;
}

enum class MutationMove { kInsert, kDelete, kParams, kSwap };

MutationMove pick_move(Xoshiro256& rng, const SearchConfig& cfg, size_t length) {
    if (length == 0) return MutationMove::kInsert;
    const double weights[4] = {cfg.insert_weight, cfg.delete_weight,
                               cfg.mutate_params_weight, cfg.swap_weight};
    double total = 0.0;
    for (double w : weights) total += w;
    double u = rng.uniform() * total;
    for (int i = 0; i < 3; ++i) {
        if (u < weights[i]) return static_cast<MutationMove>(i);
        u -= weights[i];
    }
    return MutationMove::kSwap;
}

void resample_params(Op& op, Xoshiro256& rng, uint32_t width, const SearchConfig& cfg,
                     const GateTables& t) {
    if (auto* np = std::get_if<NewPairOp>(&op)) {
        np->reg = rng.below(width);
    } else if (auto* pp = std::get_if<PairPermuteOp>(&op)) {
        pp->perm_id = static_cast<uint8_t>(rng.below(number_of_local_perms()));
        pp->reg = rng.below(width);
    } else if (auto* g = std::get_if<BPGateOp>(&op)) {
        g->params = random_gate_params(rng, cfg, t);
        g->reg_a = rng.below(width);
        g->reg_b = rng.below(width - 1);
        if (g->reg_b >= g->reg_a) ++g->reg_b;
    } else if (auto* m = std::get_if<MeasureOp>(&op)) {
        const auto [basis, mode] = random_measurement(rng, cfg);
        m->basis = basis;
        m->mode = mode;
        m->reg = rng.below(width);
    }
}

struct Scored {
    Circuit circuit;
    double cost = kWorst;  // frozen at first evaluation
    uint32_t length = 0;
    uint32_t raw_pairs = 0;
};

// Selection order: higher cost, then shorter, then fewer raw pairs.
bool better(const Scored& a, const Scored& b) {
    if (a.cost != b.cost) return a.cost > b.cost;
    if (a.length != b.length) return a.length < b.length;
    return a.raw_pairs < b.raw_pairs;
}

Circuit widened(Circuit c, uint32_t width) {
    c.register_width = std::max(c.register_width, width);
    return c;
}

bool fits_bounds(const Circuit& c, const SearchConfig& cfg) {
    const CircuitStats s = circuit_stats(c);
    return s.register_width <= cfg.max_registers && s.raw_pairs <= cfg.max_raw_pairs &&
           s.length <= cfg.max_gates;
}

// Literature baselines that match the bounds, normalized to the search's
// genome shape (full register width, outputs 0..k-1).
std::vector<Circuit> seed_circuits(const SearchConfig& cfg, const GateTables& t) {
    std::vector<Circuit> seeds;
    const auto add = [&](Circuit c) {
        c = widened(std::move(c), cfg.max_registers);
        if (fits_bounds(c, cfg) && is_valid(c)) seeds.push_back(std::move(c));
    };
    add(build_passthrough(cfg.output_pairs));
    if (cfg.output_pairs == 1) {
        add(build_single_selection(MeasureBasis::kZ, t));
        add(build_double_selection(DoubleSelectionVariant::kZX, t));
        add(build_double_selection(DoubleSelectionVariant::kXZ, t));
    } else {
        const uint32_t k = cfg.output_pairs;
        add(build_blockwise_pumping(k, t));
        if ((k & (k - 1)) == 0 && 2 * k <= cfg.max_registers) {
            add(build_truncated_hashing(2 * k, k, t));
        }
    }
    return seeds;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<uint16_t> good_gate_ids(const GateTables& t) { return cached_good_gate_ids(t); }

const std::vector<std::pair<MeasureBasis, MeasureMode>>& default_measurements() {
    static const std::vector<std::pair<MeasureBasis, MeasureMode>> kDefaults = {
        {MeasureBasis::kZ, MeasureMode::kCoincidence},
        {MeasureBasis::kX, MeasureMode::kCoincidence},
        {MeasureBasis::kY, MeasureMode::kAnticoincidence},
    };
    return kDefaults;
}

std::vector<std::string> CostFunction::validate(uint32_t output_pairs) const {
    std::vector<std::string> problems;
    const bool needs_code = kind == CostKind::kFL || kind == CostKind::kFLMinusI;
    if (needs_code && code == nullptr) {
        problems.push_back("logical-fidelity costs need a stabilizer code");
    }
    if (needs_code && code != nullptr &&
        static_cast<uint32_t>(code->n_phys()) != output_pairs) {
        problems.push_back("code acts on " + std::to_string(code->n_phys()) +
                           " qubits but the search keeps " + std::to_string(output_pairs) +
                           " output pairs");
    }
    if (!std::isfinite(mi_weight)) problems.push_back("mutual-information weight must be finite");
    return problems;
}

double CostFunction::score(const MetricsReport& r, uint64_t min_accepted) const {
    if (!r.metrics_available) return kWorst;
    if (!r.exact && r.accepted_count < min_accepted) return kWorst;
    double value;
    switch (kind) {
        case CostKind::kFOut: value = r.f_out.value; break;
        case CostKind::kFA: value = r.f_a.value; break;
        case CostKind::kFL: value = r.f_l ? r.f_l->value : kWorst; break;
        default:
            value = r.f_l ? r.f_l->value : kWorst;
            if (r.mutual_info) value -= mi_weight * r.mutual_info->value;
            break;
    }
    return std::isnan(value) ? kWorst : value;
}

std::vector<std::string> SearchConfig::validate() const {
    std::vector<std::string> problems;
    if (population_size < 2) problems.push_back("population size must be at least 2");
    const double weights[4] = {insert_weight, delete_weight, mutate_params_weight, swap_weight};
    double total = 0.0;
    bool weights_ok = true;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) weights_ok = false;
        total += w;
    }
    if (!weights_ok) {
        problems.push_back("mutation weights must be finite and non-negative");
    } else if (total <= 0.0) {
        problems.push_back("mutation weights must have a positive sum");
    }
    if (!std::isfinite(crossover_rate) || crossover_rate < 0.0 || crossover_rate > 1.0) {
        problems.push_back("crossover rate must be in [0, 1]");
    }
    if (eval_samples < 1) problems.push_back("eval_samples must be at least 1");
    if (final_eval_samples < 1) problems.push_back("final_eval_samples must be at least 1");
    if (output_pairs < 1) problems.push_back("output_pairs must be at least 1");
    if (output_pairs >= max_registers) {
        problems.push_back("infeasible bounds: needs output_pairs < max_registers (k < r)");
    }
    if (max_raw_pairs < output_pairs) {
        problems.push_back("infeasible bounds: max_raw_pairs below output_pairs");
    }
    return problems;
}

Circuit mutate(const Circuit& c, Xoshiro256& rng, const SearchConfig& cfg,
               const GateTables& t) {
    Circuit m = c;
    const uint32_t width = m.register_width;
    switch (pick_move(rng, cfg, m.ops.size())) {
        case MutationMove::kInsert: {
            const uint32_t pos = rng.below(static_cast<uint32_t>(m.ops.size()) + 1);
            m.ops.insert(m.ops.begin() + pos, random_op(rng, width, cfg, t));
            break;
        }
        case MutationMove::kDelete:
            m.ops.erase(m.ops.begin() + rng.below(static_cast<uint32_t>(m.ops.size())));
            break;
        case MutationMove::kParams:
            resample_params(m.ops[rng.below(static_cast<uint32_t>(m.ops.size()))], rng, width,
                            cfg, t);
            break;
        case MutationMove::kSwap: {
            const uint32_t i = rng.below(static_cast<uint32_t>(m.ops.size()));
            const uint32_t j = rng.below(static_cast<uint32_t>(m.ops.size()));
            std::swap(m.ops[i], m.ops[j]);
            break;
        }
    }
    return repair(m, cfg);
}

Circuit crossover(const Circuit& a, const Circuit& b, Xoshiro256& rng,
                  const SearchConfig& cfg) {
    if (a.register_width != b.register_width || a.output_pairs != b.output_pairs) {
        throw std::invalid_argument(
            "crossover needs parents with matching register width and outputs");
    }
    const uint32_t cut =
        rng.below(static_cast<uint32_t>(std::min(a.ops.size(), b.ops.size())) + 1);
    Circuit child;
    child.register_width = a.register_width;
    child.output_pairs = a.output_pairs;
    child.ops.assign(a.ops.begin(), a.ops.begin() + cut);
    child.ops.insert(child.ops.end(), b.ops.begin() + cut, b.ops.end());
    return repair(child, cfg);
}

SearchResult optimize(const SearchConfig& cfg, const NoiseConfig& noise,
                      const CostFunction& cost, const GateTables& t) {
    std::vector<std::string> problems = cfg.validate();
    for (const std::string& p : cost.validate(cfg.output_pairs)) problems.push_back(p);
    for (const std::string& p : noise.validate()) problems.push_back(p);
    if (!problems.empty()) {
        throw std::invalid_argument("invalid search setup: " + problems.front());
    }

    SimOptions sim;
    sim.threads = cfg.threads;
    sim.tables = &t;
    if (cost.kind == CostKind::kFL || cost.kind == CostKind::kFLMinusI) sim.code = cost.code;
    // The plug-in MI estimate is biased upward on few samples, which only
    // penalizes low-acceptance candidates here, so take it as soon as it
    // exists.
    sim.min_accepted_for_mi = 2;
    sim.exact_register_cap = std::max(sim.exact_register_cap, cfg.max_registers);

    uint64_t eval_counter = 0;
    const auto evaluate = [&](Circuit c) {
        Scored s;
        const CircuitStats stats = circuit_stats(c);
        s.length = stats.length;
        s.raw_pairs = stats.raw_pairs;
        const uint64_t eval_seed = Xoshiro256(cfg.seed, kEvalStreamBase + eval_counter).next();
        ++eval_counter;
        if (c.register_width <= cfg.exact_eval_registers) {
            s.cost = cost.score(run_exact(c, noise, sim).report);
        } else {
            s.cost = cost.score(run_monte_carlo(c, noise, cfg.eval_samples, eval_seed, sim));
        }
        s.circuit = std::move(c);
        return s;
    };

    Xoshiro256 rng(cfg.seed, kLoopStream);
    const std::vector<Circuit> seeds = seed_circuits(cfg, t);
    std::vector<Scored> population;
    population.reserve(cfg.population_size * 2);
    for (const Circuit& seed : seeds) {
        if (population.size() >= cfg.population_size) break;
        population.push_back(evaluate(seed));
    }
    for (size_t i = 0; population.size() < cfg.population_size; ++i) {
        Circuit c = seeds[i % seeds.size()];
        const uint32_t rounds = 1 + rng.below(4);
        for (uint32_t m = 0; m < rounds; ++m) c = mutate(c, rng, cfg, t);
        population.push_back(evaluate(std::move(c)));
    }

    SearchResult result;
    double best_so_far = kWorst;
    uint32_t stale = 0;
    for (uint32_t gen = 0;; ++gen) {
        std::stable_sort(population.begin(), population.end(), better);
        population.resize(std::min<size_t>(population.size(), cfg.population_size));

        const double best = population.front().cost;
        const size_t n = population.size();
        const double median = (n % 2 == 1)
                                  ? population[n / 2].cost
                                  : 0.5 * (population[n / 2 - 1].cost + population[n / 2].cost);
        result.log.push_back(GenerationLog{gen, best, median, population.front().length});

        if (best > best_so_far) {
            best_so_far = best;
            stale = 0;
        } else {
            ++stale;
        }
        if (gen >= cfg.max_generations || stale >= cfg.convergence_patience) break;

        const size_t survivors = population.size();
        for (uint32_t i = 0; i < cfg.population_size; ++i) {
            Circuit child;
            if (survivors >= 2 && rng.bernoulli(cfg.crossover_rate)) {
                const uint32_t a = rng.below(static_cast<uint32_t>(survivors));
                uint32_t b = rng.below(static_cast<uint32_t>(survivors - 1));
                if (b >= a) ++b;
                child = crossover(population[a].circuit, population[b].circuit, rng, cfg);
            } else {
                child = population[rng.below(static_cast<uint32_t>(survivors))].circuit;
            }
            population.push_back(evaluate(mutate(child, rng, cfg, t)));
        }
    }

    result.best = population.front().circuit;
    result.best_recorded_cost = population.front().cost;
    const uint64_t final_seed = Xoshiro256(cfg.seed, kFinalStream).next();
    result.final_report =
        run_monte_carlo(result.best, noise, cfg.final_eval_samples, final_seed, sim);
    return result;
}

std::string search_log_csv(const std::vector<GenerationLog>& log) {
    std::ostringstream out;
    out << "generation,best_cost,median_cost,best_length\n";
    for (const GenerationLog& g : log) {
        out << g.generation << ',' << fmt(g.best_cost) << ',' << fmt(g.median_cost) << ','
            << g.best_length << '\n';
    }
    return out.str();
}

}  // namespace bellperm
