#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bellperm/rng.hpp"
#include "bellperm/sim.hpp"

// Monte Carlo engine: each trajectory draws its own RNG stream from
// (seed, trajectory index), walks a pre-compiled op list over a byte-per-
// register code array, and is rejected at its first failing reported
// verdict.  Accepted samples feed integer tallies whose merge is plain
// addition, so the parallel and serial drivers produce byte-identical
// reports at any thread count.

namespace bellperm {

namespace {

enum class GateNoise : uint8_t { kNone, kUniform, kCustom };

// Flat per-op data so the trajectory loop does no variant dispatch and no
// table lookups beyond the resolved row pointers.
struct CompiledOp {
    enum Kind : uint8_t { kNewPair, kPermute, kGate, kMeasure } kind;
    uint32_t reg_a = 0;
    uint32_t reg_b = 0;
    std::array<uint8_t, 4> map{};  // kPermute: code remap
    GateTables::Resolved gate{};   // kGate
    uint8_t pass_mask = 0;         // kMeasure: bit c set if code c truly passes
};

struct CompiledCircuit {
    std::vector<CompiledOp> ops;
    uint32_t width = 0;
    std::vector<uint32_t> outputs;

    double f_in = 1.0;
    GateNoise gate_noise = GateNoise::kNone;
    double p2 = 1.0;
    std::array<double, 16> gate_cdf{};  // kCustom only
    bool has_local = false;
    std::array<double, 4> local_cdf{};
    double flip = 0.0;
};

CompiledCircuit compile(const Circuit& c, const NoiseConfig& cfg, const GateTables& t) {
    CompiledCircuit cc;
    cc.width = c.register_width;
    cc.outputs = c.output_pairs;
    cc.f_in = cfg.f_in;
    cc.flip = cfg.verdict_flip_probability();
    if (cfg.gate_channel) {
        cc.gate_noise = GateNoise::kCustom;
        double acc = 0.0;
        for (size_t m = 0; m < 16; ++m) {
            acc += (*cfg.gate_channel)[m];
            cc.gate_cdf[m] = acc;
        }
        cc.gate_cdf[15] = 1.0;  // absorb roundoff in the last bucket
    } else if (cfg.p2 < 1.0) {
        cc.gate_noise = GateNoise::kUniform;
        cc.p2 = cfg.p2;
    }
    if (cfg.local_channel) {
        cc.has_local = true;
        double acc = 0.0;
        for (size_t m = 0; m < 4; ++m) {
            acc += (*cfg.local_channel)[m];
            cc.local_cdf[m] = acc;
        }
        cc.local_cdf[3] = 1.0;
    }

    cc.ops.reserve(c.ops.size());
    for (const Op& op : c.ops) {
        CompiledOp co{};
        if (const auto* np = std::get_if<NewPairOp>(&op)) {
            co.kind = CompiledOp::kNewPair;
            co.reg_a = np->reg;
        } else if (const auto* pp = std::get_if<PairPermuteOp>(&op)) {
            co.kind = CompiledOp::kPermute;
            co.reg_a = pp->reg;
            for (uint8_t code = 0; code < 4; ++code)
                co.map[code] = apply_pair_permute(t, pp->perm_id, code);
        } else if (const auto* g = std::get_if<BPGateOp>(&op)) {
            co.kind = CompiledOp::kGate;
            co.reg_a = g->reg_a;
            co.reg_b = g->reg_b;
            co.gate = t.resolve(pack_gate_id(g->params));
        } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
            co.kind = CompiledOp::kMeasure;
            co.reg_a = m->reg;
            for (uint8_t code = 0; code < 4; ++code)
                if (measurement_passes(m->basis, m->mode, code)) co.pass_mask |= 1u << code;
        }
        cc.ops.push_back(co);
    }
    return cc;
}

template <size_t N>
uint32_t sample_cdf(Xoshiro256& rng, const std::array<double, N>& cdf) {
    const double u = rng.uniform();
    uint32_t m = 0;
    while (m + 1 < N && u >= cdf[m]) ++m;
    return m;
}

// One trajectory; true when every reported verdict passed.
bool run_trajectory(const CompiledCircuit& cc, Xoshiro256& rng, uint8_t* regs) {
    for (const CompiledOp& op : cc.ops) {
        switch (op.kind) {
            case CompiledOp::kNewPair:
                // Werner raw pair: A with probability f_in, else uniform
                // over the three error codes (B = 0, C = 1, D = 2).
                regs[op.reg_a] =
                    rng.bernoulli(cc.f_in) ? kBellA : static_cast<uint8_t>(rng.below(3));
                break;
            case CompiledOp::kPermute: {
                uint8_t code = op.map[regs[op.reg_a]];
                if (cc.has_local) code ^= static_cast<uint8_t>(sample_cdf(rng, cc.local_cdf));
                regs[op.reg_a] = code;
                break;
            }
            case CompiledOp::kGate: {
                const uint8_t joint = static_cast<uint8_t>((regs[op.reg_a] << 2) | regs[op.reg_b]);
                uint8_t out = op.gate.apply(joint);
                if (cc.gate_noise == GateNoise::kUniform) {
                    if (!rng.bernoulli(cc.p2)) out ^= static_cast<uint8_t>(rng.below(16));
                } else if (cc.gate_noise == GateNoise::kCustom) {
                    out ^= static_cast<uint8_t>(sample_cdf(rng, cc.gate_cdf));
                }
                regs[op.reg_a] = out >> 2;
                regs[op.reg_b] = out & 3;
                break;
            }
            case CompiledOp::kMeasure: {
                bool pass = (op.pass_mask >> regs[op.reg_a]) & 1;
                if (cc.flip > 0.0 && rng.bernoulli(cc.flip)) pass = !pass;
                regs[op.reg_a] = 0;
                if (!pass) return false;
                break;
            }
        }
    }
    return true;
}

// Per-thread integer tallies; merge order cannot affect the totals.
struct Tally {
    uint64_t accepted = 0;
    uint64_t sum_a = 0;   // total A outputs over accepted samples
    uint64_t sum_a2 = 0;  // sum of squares, for the f_out standard error
    uint64_t all_a = 0;
    uint64_t within_threshold = 0;
    uint64_t decoded = 0;
    std::vector<uint64_t> weight_counts;  // index = number of non-A outputs
    std::vector<uint64_t> pair_joint;     // 16 joint-code counts per output pair i < j

    explicit Tally(uint32_t k)
        : weight_counts(k + 1, 0), pair_joint(k >= 2 ? size_t{k} * (k - 1) / 2 * 16 : 0, 0) {}

    void merge(const Tally& o) {
        accepted += o.accepted;
        sum_a += o.sum_a;
        sum_a2 += o.sum_a2;
        all_a += o.all_a;
        within_threshold += o.within_threshold;
        decoded += o.decoded;
        for (size_t i = 0; i < weight_counts.size(); ++i) weight_counts[i] += o.weight_counts[i];
        for (size_t i = 0; i < pair_joint.size(); ++i) pair_joint[i] += o.pair_joint[i];
    }
};

void record(Tally& t, const CompiledCircuit& cc, const uint8_t* regs, uint8_t* out,
            const PatternDecoder* decoder, int correctable) {
    const uint32_t k = static_cast<uint32_t>(cc.outputs.size());
    ++t.accepted;
    uint64_t a = 0;
    for (uint32_t o = 0; o < k; ++o) {
        out[o] = regs[cc.outputs[o]];
        a += out[o] == kBellA;
    }
    t.sum_a += a;
    t.sum_a2 += a * a;
    t.all_a += a == k;
    ++t.weight_counts[k - a];
    size_t pair = 0;
    for (uint32_t i = 0; i < k; ++i)
        for (uint32_t j = i + 1; j < k; ++j, ++pair)
            ++t.pair_joint[pair * 16 + ((out[i] << 2) | out[j])];
    if (decoder != nullptr) {
        ErrorPattern pattern;
        for (uint32_t o = 0; o < k; ++o) {
            const PauliLetter l = pair_to_pauli(out[o]);
            if (l == kPauliX || l == kPauliY) pattern.x |= 1u << o;
            if (l == kPauliZ || l == kPauliY) pattern.z |= 1u << o;
        }
        t.within_threshold += pattern.weight() <= correctable;
        t.decoded += decoder->corrects(pattern);
    }
}

Estimate binomial(uint64_t hits, uint64_t trials) {
    if (trials == 0) return {0.0, 0.0};
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

MetricsReport finalize(const Tally& t, uint64_t n_samples, uint32_t k, bool has_code,
                       uint64_t min_accepted_for_mi) {
    MetricsReport r;
    r.sample_count = n_samples;
    r.accepted_count = t.accepted;
    r.p_success = binomial(t.accepted, n_samples);
    r.weight_histogram.assign(t.weight_counts.begin(), t.weight_counts.end());
    r.metrics_available = t.accepted > 0;
    if (!r.metrics_available) return r;

    const double m = static_cast<double>(t.accepted);
    if (k == 0) {
        r.f_out = {1.0, 0.0};
    } else {
        // Mean of the per-sample A fraction a/k, with its sample-variance SE.
        const double mean_a = static_cast<double>(t.sum_a) / m;
        r.f_out.value = mean_a / k;
        if (t.accepted > 1) {
            const double var_a =
                (static_cast<double>(t.sum_a2) - m * mean_a * mean_a) / (m - 1.0);
            r.f_out.se = std::sqrt(std::max(0.0, var_a) / m) / k;
        }
    }
    r.f_a = binomial(t.all_a, t.accepted);
    if (has_code) {
        r.f_l = binomial(t.within_threshold, t.accepted);
        r.f_l_decoder = binomial(t.decoded, t.accepted);
    }

    if (k >= 2 && t.accepted >= min_accepted_for_mi) {
        // Pairwise mutual information with the Miller-Madow bias correction:
        // the plug-in estimate overshoots by (cells - rows - cols + 1) /
        // (2 m ln 2) per pair, several standard errors at independence, so
        // the corrected value fluctuates around zero there (small negative
        // readings are expected). Per-pair variance from the delta method,
        // cross-pair covariances ignored.
        double mi = 0.0, var = 0.0;
        size_t pair = 0;
        for (uint32_t i = 0; i < k; ++i) {
            for (uint32_t j = i + 1; j < k; ++j, ++pair) {
                const uint64_t* cnt = &t.pair_joint[pair * 16];
                double pa[4] = {0.0}, pb[4] = {0.0};
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        const double pab = static_cast<double>(cnt[(a << 2) | b]) / m;
                        pa[a] += pab;
                        pb[b] += pab;
                    }
                double mi_ij = 0.0, second = 0.0;
                int joint_cells = 0, a_cells = 0, b_cells = 0;
                for (int a = 0; a < 4; ++a) {
                    a_cells += pa[a] > 0.0;
                    b_cells += pb[a] > 0.0;
                }
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        if (cnt[(a << 2) | b] == 0) continue;
                        ++joint_cells;
                        const double pab = static_cast<double>(cnt[(a << 2) | b]) / m;
                        const double l = std::log2(pab / (pa[a] * pb[b]));
                        mi_ij += pab * l;
                        second += pab * l * l;
                    }
                mi += mi_ij - (joint_cells - a_cells - b_cells + 1) / (2.0 * m * std::log(2.0));
                var += std::max(0.0, second - mi_ij * mi_ij) / m;
            }
        }
        r.mutual_info = Estimate{mi, std::sqrt(var)};
    }
    return r;
}

struct Prepared {
    CompiledCircuit cc;
    std::optional<PatternDecoder> decoder;
    int correctable = 0;
};

Prepared prepare(const Circuit& c, const NoiseConfig& cfg, const SimOptions& opt) {
    {
        const std::vector<std::string> circuit_problems = validate(c);
        if (!circuit_problems.empty())
            throw std::invalid_argument("invalid circuit: " + circuit_problems.front());
        const std::vector<std::string> cfg_problems = cfg.validate();
        if (!cfg_problems.empty())
            throw std::invalid_argument("invalid noise config: " + cfg_problems.front());
    }
    if (opt.code != nullptr &&
        static_cast<int>(c.output_pairs.size()) != opt.code->n_phys())
        throw std::invalid_argument("code expects " + std::to_string(opt.code->n_phys()) +
                                    " output pairs, circuit has " +
                                    std::to_string(c.output_pairs.size()));
    Prepared p{compile(c, cfg, opt.tables ? *opt.tables : GateTables::instance()), {}, 0};
    if (opt.code != nullptr) {
        p.decoder.emplace(*opt.code);
        p.correctable = opt.code->correctable_weight();
    }
    return p;
}

}  // namespace

MetricsReport run_monte_carlo_serial(const Circuit& c, const NoiseConfig& cfg,
                                     uint64_t n_samples, uint64_t seed,
                                     const SimOptions& opt) {
    const Prepared p = prepare(c, cfg, opt);
    const uint32_t k = static_cast<uint32_t>(p.cc.outputs.size());
    const PatternDecoder* decoder = p.decoder ? &*p.decoder : nullptr;
    Tally tally(k);
    std::vector<uint8_t> regs(p.cc.width, 0);
    std::vector<uint8_t> out(k, 0);
    for (uint64_t i = 0; i < n_samples; ++i) {
        std::fill(regs.begin(), regs.end(), 0);
        Xoshiro256 rng(seed, i);
        if (run_trajectory(p.cc, rng, regs.data()))
            record(tally, p.cc, regs.data(), out.data(), decoder, p.correctable);
    }
    return finalize(tally, n_samples, k, decoder != nullptr, opt.min_accepted_for_mi);
}

MetricsReport run_monte_carlo(const Circuit& c, const NoiseConfig& cfg, uint64_t n_samples,
                              uint64_t seed, const SimOptions& opt) {
#ifndef _OPENMP
    return run_monte_carlo_serial(c, cfg, n_samples, seed, opt);
#else
    const Prepared p = prepare(c, cfg, opt);
    const uint32_t k = static_cast<uint32_t>(p.cc.outputs.size());
    const PatternDecoder* decoder = p.decoder ? &*p.decoder : nullptr;
    Tally tally(k);
    const int threads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
    {
        Tally local(k);
        std::vector<uint8_t> regs(p.cc.width, 0);
        std::vector<uint8_t> out(k, 0);
#pragma omp for schedule(static)
        for (int64_t i = 0; i < static_cast<int64_t>(n_samples); ++i) {
            std::fill(regs.begin(), regs.end(), 0);
            Xoshiro256 rng(seed, static_cast<uint64_t>(i));
            if (run_trajectory(p.cc, rng, regs.data()))
                record(local, p.cc, regs.data(), out.data(), decoder, p.correctable);
        }
#pragma omp critical
        tally.merge(local);
    }
    return finalize(tally, n_samples, k, decoder != nullptr, opt.min_accepted_for_mi);
#endif
}

}  // namespace bellperm
