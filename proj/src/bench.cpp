#include <chrono>
#include <sstream>

#include "bellperm/bench.hpp"
#include "bellperm/bell.hpp"
#include "bellperm/clifford_enum.hpp"
#include "bellperm/rng.hpp"
#include "bellperm/sim.hpp"
#include "bellperm/tableau_network.hpp"

namespace bellperm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs doubled gate applications until the point has enough signal, then
// reports nanoseconds per single gate application.  `apply` performs one
// self-inverse gate at (gate index, pair, pair).
template <typename Apply>
BenchPoint time_backend(const char* backend, uint32_t n_pairs, double min_seconds,
                        uint64_t seed, Apply&& apply) {
    Xoshiro256 rng(seed, n_pairs);
    uint64_t gates = 0;
    const Clock::time_point t0 = Clock::now();
    double elapsed = 0.0;
    do {
        // 64 gates per clock check keeps timing overhead off the fast path.
        for (int batch = 0; batch < 32; ++batch) {
            const uint32_t which = rng.below(3);
            const uint32_t a = rng.below(n_pairs);
            uint32_t b = rng.below(n_pairs);
            while (b == a) b = rng.below(n_pairs);
            apply(which, a, b);
            apply(which, a, b);
        }
        gates += 64;
        elapsed = seconds_since(t0);
    } while (elapsed < min_seconds);
    return {backend, n_pairs, gates, elapsed * 1e9 / static_cast<double>(gates)};
}

}  // namespace

std::vector<BenchPoint> run_scaling_benchmark(const std::vector<uint32_t>& sizes,
                                              double min_seconds, uint64_t seed,
                                              uint32_t tableau_size_cap) {
    const GateTables& tables = GateTables::instance();
    const GateTables::Resolved fast[3] = {tables.resolve(tables.cnot_id),
                                          tables.resolve(tables.cz_id),
                                          tables.resolve(tables.swap_id)};
    const CliffordGate slow[3] = {cnot_gate(), cz_gate(), swap_gate()};

    std::vector<BenchPoint> points;
    bool warmed_up = false;
    for (uint32_t n : sizes) {
        RegisterState state(n);
        for (uint32_t i = 0; i < n; ++i) state.set_pair(i, kBellA);
        if (!warmed_up) {
            // Discarded first burn lets the clock frequency settle before
            // anything is recorded.
            (void)time_backend("warmup", n, min_seconds,
                               seed, [&](uint32_t which, uint32_t a, uint32_t b) {
                                   const uint8_t joint = fast[which].apply(
                                       static_cast<uint8_t>((state.get_pair(a) << 2) |
                                                            state.get_pair(b)));
                                   state.set_pair(a, joint >> 2);
                                   state.set_pair(b, joint & 3);
                               });
            warmed_up = true;
        }
        points.push_back(time_backend(
            "diagonal", n, min_seconds, seed, [&](uint32_t which, uint32_t a, uint32_t b) {
                const uint8_t joint = fast[which].apply(
                    static_cast<uint8_t>((state.get_pair(a) << 2) | state.get_pair(b)));
                state.set_pair(a, joint >> 2);
                state.set_pair(b, joint & 3);
            }));

        if (n > tableau_size_cap) continue;
        BellNetworkTableau net(std::vector<uint8_t>(n, kBellA));
        points.push_back(time_backend(
            "tableau", n, min_seconds, seed, [&](uint32_t which, uint32_t a, uint32_t b) {
                net.apply_bilateral(slow[which], a, b);
            }));
    }
    return points;
}

std::string bench_csv(const std::vector<BenchPoint>& points) {
    std::ostringstream out;
    out << "backend,n_pairs,gates,ns_per_gate\n";
    for (const BenchPoint& p : points)
        out << p.backend << ',' << p.n_pairs << ',' << p.gates << ',' << p.ns_per_gate
            << '\n';
    return out.str();
}

std::vector<EnginePoint> run_engine_benchmark(uint64_t samples, uint64_t seed,
                                              const std::vector<int>& thread_counts) {
    const Circuit circuit = build_double_selection(DoubleSelectionVariant::kZX);
    NoiseConfig cfg;
    cfg.f_in = 0.9;
    cfg.p2 = 0.99;

    std::vector<EnginePoint> points;
    const auto timed = [&](const char* engine, int threads) {
        SimOptions opt;
        opt.threads = threads;
        const Clock::time_point t0 = Clock::now();
        if (threads == 0) {
            (void)run_monte_carlo_serial(circuit, cfg, samples, seed);
        } else {
            (void)run_monte_carlo(circuit, cfg, samples, seed, opt);
        }
        const double s = seconds_since(t0);
        points.push_back(
            {engine, threads, samples, s, static_cast<double>(samples) / s});
    };
    timed("serial", 0);
    for (int t : thread_counts) timed("parallel", t);
    return points;
}

std::string engine_csv(const std::vector<EnginePoint>& points) {
    std::ostringstream out;
    out << "engine,threads,samples,seconds,samples_per_second\n";
    for (const EnginePoint& p : points)
        out << p.engine << ',' << p.threads << ',' << p.samples << ',' << p.seconds << ','
            << p.samples_per_second << '\n';
    return out.str();
}

}  // namespace bellperm
