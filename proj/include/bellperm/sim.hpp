#pragma once

#include <cstdint>
#include <vector>

#include "bellperm/circuit.hpp"
#include "bellperm/gate_tables.hpp"
#include "bellperm/metrics.hpp"
#include "bellperm/stabilizer_code.hpp"

// Circuit execution under noise: Monte Carlo trajectories for any register
// width, exact distribution propagation for small ones.  Both consume the
// same Circuit and NoiseConfig and produce a MetricsReport, so they can be
// cross-validated statistically.

namespace bellperm {

struct SimOptions {
    // Worker threads for the parallel Monte Carlo engine; 0 takes the
    // OpenMP default.  Results are independent of this value.
    int threads = 0;
    // Enables the f_l metrics; the circuit's output count must equal the
    // code's physical-qubit count.  Not owned.
    const StabilizerCode* code = nullptr;
    // Pairwise mutual information is skipped below this acceptance count
    // (the plug-in estimator is garbage on a handful of samples).
    uint64_t min_accepted_for_mi = 100;
    // Exact mode refuses circuits with more live registers than this; the
    // distribution has 4^registers entries.
    uint32_t exact_register_cap = 10;
    // Gate tables to run against; defaults to GateTables::instance().
    const GateTables* tables = nullptr;
};

// n_samples independent trajectories from counter-based per-trajectory RNG
// streams seeded by (seed, trajectory index).  A trajectory is rejected at
// its first failing reported verdict and still counts against p_success.
// Identical inputs give a byte-identical report at any thread count.
MetricsReport run_monte_carlo(const Circuit& c, const NoiseConfig& cfg,
                              uint64_t n_samples, uint64_t seed,
                              const SimOptions& opt = {});

// Plain single-loop implementation kept as the reference for the parallel
// engine; must produce byte-identical reports.
MetricsReport run_monte_carlo_serial(const Circuit& c, const NoiseConfig& cfg,
                                     uint64_t n_samples, uint64_t seed,
                                     const SimOptions& opt = {});

struct ExactResult {
    MetricsReport report;
    // Joint distribution over output-pair codes conditioned on acceptance;
    // output j (in output_pairs order) occupies index bits [2j, 2j+2).
    std::vector<double> output_distribution;
    // Mass removed by failed verdicts; p_success + rejected_mass = 1 up to
    // floating-point roundoff.
    double rejected_mass = 0.0;
};

// Propagates the full 4^registers distribution through the circuit:
// permutations reindex it, noise channels convolve mask distributions onto
// it, measurements weight it by the reported-pass probability and
// marginalize the consumed register.
ExactResult run_exact(const Circuit& c, const NoiseConfig& cfg,
                      const SimOptions& opt = {});

}  // namespace bellperm
