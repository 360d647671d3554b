#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bellperm/circuit.hpp"
#include "bellperm/metrics.hpp"
#include "bellperm/rng.hpp"
#include "bellperm/sim.hpp"
#include "bellperm/stabilizer_code.hpp"

// Genetic search over purification circuits.  Candidates are op lists over a
// fixed register width with outputs pinned to registers 0..k-1; mutation and
// crossover always pass their result through a repair step, so every circuit
// the search touches satisfies validate().

namespace bellperm {

enum class CostKind : uint8_t {
    kFOut,      // average output-pair fidelity
    kFA,        // probability that every output pair is A
    kFL,        // correctable-weight survival under a stabilizer code
    kFLMinusI,  // f_l minus weighted pairwise mutual information
};

struct CostFunction {
    CostKind kind = CostKind::kFOut;
    // Required for the f_l kinds; its physical-qubit count must equal the
    // search's output-pair count.  Not owned.
    const StabilizerCode* code = nullptr;
    // Weight on the summed pairwise mutual information in kFLMinusI.
    double mi_weight = 1.0;

    std::vector<std::string> validate(uint32_t output_pairs) const;

    // Larger is better.  Reports without usable output metrics (nothing
    // accepted), and Monte Carlo reports with fewer than `min_accepted`
    // accepted samples, score -infinity so a lucky handful of trajectories
    // cannot freeze a low-acceptance circuit at the top of the population.
    double score(const MetricsReport& r, uint64_t min_accepted = 10) const;
};

struct SearchConfig {
    uint32_t population_size = 100;
    uint32_t max_generations = 200;
    // Stop after this many generations without best-cost improvement.
    uint32_t convergence_patience = 20;

    // Relative odds of the four mutation moves; any can be zeroed.
    double insert_weight = 1.0;
    double delete_weight = 1.0;
    double mutate_params_weight = 1.0;
    double swap_weight = 1.0;
    // Probability that an offspring starts from a two-parent splice instead
    // of a copy of one parent (it is mutated either way).
    double crossover_rate = 0.5;

    // Monte Carlo budget per candidate during search and for the final
    // re-evaluation of the winner.
    uint64_t eval_samples = 10000;
    uint64_t final_eval_samples = 100000;
    uint64_t seed = 0;

    // Move set.  By default inserted/resampled gates come from the subset
    // that maps a perfect joint pair to a perfect joint pair, and
    // measurements from the three verdicts a perfect pair passes (ZZ and XX
    // coincidence, YY anticoincidence); the flags open the full gate group,
    // all six basis/mode combinations, and single-pair permutations.
    bool good_gates_only = true;
    bool all_measurements = false;

    // Resource bounds: candidates live on exactly max_registers registers
    // and never exceed max_raw_pairs loads or max_gates two-pair gates;
    // output_pairs fixes k (outputs are registers 0..k-1).
    uint32_t max_registers = 4;
    uint32_t max_raw_pairs = 6;
    uint32_t max_gates = 12;
    uint32_t output_pairs = 1;

    // Candidates on at most this many registers are scored with the exact
    // engine (deterministic, variance-free) instead of Monte Carlo.
    uint32_t exact_eval_registers = 7;
    // Threads for Monte Carlo evaluations; 0 takes the OpenMP default.
    // Results are independent of this value.
    int threads = 0;

    std::vector<std::string> validate() const;
};

struct GenerationLog {
    uint32_t generation = 0;
    double best_cost = 0.0;
    double median_cost = 0.0;
    uint32_t best_length = 0;  // two-pair gate count of the generation's best
};

struct SearchResult {
    Circuit best;
    // The frozen search-time cost the winner was selected on.
    double best_recorded_cost = 0.0;
    // Fresh Monte Carlo run of the winner at final_eval_samples.
    MetricsReport final_report;
    std::vector<GenerationLog> log;
};

// Seeded, reproducible search: evaluates new candidates (cost frozen at
// first evaluation), keeps the best population_size by (cost, shorter,
// fewer raw pairs), then adds one mutant/offspring per population slot.
// Stops at max_generations or after convergence_patience generations
// without improvement.  Throws std::invalid_argument on infeasible bounds
// (e.g. output_pairs >= max_registers) or invalid noise/cost settings.
SearchResult optimize(const SearchConfig& cfg, const NoiseConfig& noise,
                      const CostFunction& cost,
                      const GateTables& t = GateTables::instance());

// One mutation move (insert / delete / resample-params / swap two ops)
// followed by repair; the result always passes validate().  A length-0
// circuit can only receive an insert.
Circuit mutate(const Circuit& c, Xoshiro256& rng, const SearchConfig& cfg,
               const GateTables& t = GateTables::instance());

// Single-point splice of the parents' op lists followed by repair.  Parents
// must agree on register width and output registers; crossover of a
// within-bounds circuit with itself returns it unchanged.
Circuit crossover(const Circuit& a, const Circuit& b, Xoshiro256& rng,
                  const SearchConfig& cfg);

// Gate ids that fix the perfect joint code (A,A) — the "good" gates the
// default move set draws from.
std::vector<uint16_t> good_gate_ids(const GateTables& t = GateTables::instance());

// The three measurement verdicts a perfect pair passes with certainty.
const std::vector<std::pair<MeasureBasis, MeasureMode>>& default_measurements();

std::string search_log_csv(const std::vector<GenerationLog>& log);

}  // namespace bellperm
