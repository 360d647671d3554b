#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bellperm {

// One timed point of the gate-cost scaling comparison.
struct BenchPoint {
    std::string backend;  // "diagonal" or "tableau"
    uint32_t n_pairs = 0;
    uint64_t gates = 0;
    double ns_per_gate = 0.0;
};

// Times bilateral CNOT/CZ/SWAP applications on random pair indices for both
// backends at each state size.  Gates are applied in self-inverse doublets
// so the tableau rows keep bounded support while every application still
// sweeps all rows.  Each point runs for at least min_seconds and at least 32
// gates.  The tableau backend is skipped above tableau_size_cap pairs (its
// state is ~88 bytes per row).
std::vector<BenchPoint> run_scaling_benchmark(const std::vector<uint32_t>& sizes,
                                              double min_seconds, uint64_t seed,
                                              uint32_t tableau_size_cap = 1u << 21);

std::string bench_csv(const std::vector<BenchPoint>& points);

// Throughput of the trajectory engine, parallel against the serial
// reference, on the double-selection circuit at f_in 0.9 / p2 0.99.
struct EnginePoint {
    std::string engine;  // "serial" or "parallel"
    int threads = 0;
    uint64_t samples = 0;
    double seconds = 0.0;
    double samples_per_second = 0.0;
};

std::vector<EnginePoint> run_engine_benchmark(uint64_t samples, uint64_t seed,
                                              const std::vector<int>& thread_counts);

std::string engine_csv(const std::vector<EnginePoint>& points);

}  // namespace bellperm
