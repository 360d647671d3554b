#include <cassert>
#include <cmath>
#include <stdexcept>

#include "bellperm/sim.hpp"

// Exact engine: the register state is the full joint distribution over
// 4^registers Bell-code tuples, with register i's code in index bits
// [2i, 2i+2).  Gates permute and convolve it, measurements reweight it by
// the reported-pass probability and sum out the consumed register.  The
// vector stays unnormalized while measurements remove mass, so its total is
// the running acceptance probability; output metrics renormalize at the end.

namespace bellperm {

namespace {

struct ExactState {
    uint32_t width;
    std::vector<double> dist;      // 4^width entries
    std::vector<double> scratch;
    double rejected = 0.0;

    explicit ExactState(uint32_t w)
        : width(w), dist(size_t{1} << (2 * w), 0.0), scratch(dist.size(), 0.0) {
        dist[0] = 1.0;  // every register starts as a dead placeholder code 0
    }

    uint8_t code_at(size_t index, uint32_t reg) const {
        return static_cast<uint8_t>((index >> (2 * reg)) & 3);
    }

    // Sums register `reg` out of the distribution, leaving its bits at 0.
    void collapse(uint32_t reg) {
        const size_t bit = size_t{1} << (2 * reg);
        for (size_t j = 0; j < dist.size(); ++j) {
            if (code_at(j, reg) == 0) continue;
            dist[j & ~(bit * 3)] += dist[j];
            dist[j] = 0.0;
        }
    }

    // Writes a fresh single-register distribution onto a collapsed axis.
    void tensor(uint32_t reg, const std::array<double, 4>& w) {
        const size_t bit = size_t{1} << (2 * reg);
        for (size_t j = 0; j < dist.size(); ++j) {
            if (code_at(j, reg) != 0) continue;
            const double v = dist[j];
            if (v == 0.0) continue;
            dist[j + bit] = v * w[1];
            dist[j + 2 * bit] = v * w[2];
            dist[j + 3 * bit] = v * w[3];
            dist[j] = v * w[0];
        }
    }

    // XOR-mask channel on one register: ch[m] is the probability of mask m.
    void convolve_local(uint32_t reg, const std::array<double, 4>& ch) {
        std::fill(scratch.begin(), scratch.end(), 0.0);
        const size_t shift = 2 * reg;
        for (size_t j = 0; j < dist.size(); ++j) {
            const double v = dist[j];
            if (v == 0.0) continue;
            for (size_t m = 0; m < 4; ++m) scratch[j ^ (m << shift)] += v * ch[m];
        }
        dist.swap(scratch);
    }

    void permute_local(uint32_t reg, const GateTables& t, uint8_t perm_id) {
        std::fill(scratch.begin(), scratch.end(), 0.0);
        const size_t shift = 2 * reg;
        uint8_t map[4];
        for (uint8_t c = 0; c < 4; ++c) map[c] = apply_pair_permute(t, perm_id, c);
        for (size_t j = 0; j < dist.size(); ++j) {
            const double v = dist[j];
            if (v == 0.0) continue;
            const size_t c = (j >> shift) & 3;
            scratch[(j & ~(size_t{3} << shift)) | (size_t{map[c]} << shift)] += v;
        }
        dist.swap(scratch);
    }

    void apply_gate(uint32_t reg_a, uint32_t reg_b, GateTables::Resolved gate,
                    const std::array<double, 16>* channel) {
        const size_t sa = 2 * reg_a, sb = 2 * reg_b;
        std::fill(scratch.begin(), scratch.end(), 0.0);
        for (size_t j = 0; j < dist.size(); ++j) {
            const double v = dist[j];
            if (v == 0.0) continue;
            const uint8_t joint =
                static_cast<uint8_t>((((j >> sa) & 3) << 2) | ((j >> sb) & 3));
            const uint8_t out = gate.apply(joint);
            const size_t k = (j & ~((size_t{3} << sa) | (size_t{3} << sb))) |
                             (static_cast<size_t>(out >> 2) << sa) |
                             (static_cast<size_t>(out & 3) << sb);
            scratch[k] += v;
        }
        dist.swap(scratch);
        if (channel == nullptr) return;
        std::fill(scratch.begin(), scratch.end(), 0.0);
        for (size_t j = 0; j < dist.size(); ++j) {
            const double v = dist[j];
            if (v == 0.0) continue;
            for (size_t m = 0; m < 16; ++m) {
                const size_t flip = ((m >> 2) << sa) | ((m & 3) << sb);
                scratch[j ^ flip] += v * channel[0][m];
            }
        }
        dist.swap(scratch);
    }

    // Weights every entry by the probability that the reported verdict
    // passes given the register's code, then consumes the register.
    void measure(uint32_t reg, MeasureBasis basis, MeasureMode mode, double flip) {
        double pass_prob[4];
        for (uint8_t c = 0; c < 4; ++c)
            pass_prob[c] = measurement_passes(basis, mode, c) ? 1.0 - flip : flip;
        for (size_t j = 0; j < dist.size(); ++j) {
            const double v = dist[j];
            if (v == 0.0) continue;
            const double p = pass_prob[code_at(j, reg)];
            dist[j] = v * p;
            rejected += v * (1.0 - p);
        }
        collapse(reg);
    }

    double total() const {
        double t = 0.0;
        for (double v : dist) t += v;
        return t;
    }
};

}  // namespace

ExactResult run_exact(const Circuit& c, const NoiseConfig& cfg, const SimOptions& opt) {
    {
        const std::vector<std::string> circuit_problems = validate(c);
        if (!circuit_problems.empty())
            throw std::invalid_argument("invalid circuit: " + circuit_problems.front());
        const std::vector<std::string> cfg_problems = cfg.validate();
        if (!cfg_problems.empty())
            throw std::invalid_argument("invalid noise config: " + cfg_problems.front());
    }
    if (c.register_width > opt.exact_register_cap)
        throw std::invalid_argument(
            "exact mode capped at " + std::to_string(opt.exact_register_cap) +
            " registers, circuit uses " + std::to_string(c.register_width));
    const GateTables& tables = opt.tables ? *opt.tables : GateTables::instance();
    const uint32_t k = static_cast<uint32_t>(c.output_pairs.size());
    if (opt.code != nullptr && static_cast<int>(k) != opt.code->n_phys())
        throw std::invalid_argument("code expects " + std::to_string(opt.code->n_phys()) +
                                    " output pairs, circuit has " + std::to_string(k));

    const std::array<double, 4> werner{(1.0 - cfg.f_in) / 3.0, (1.0 - cfg.f_in) / 3.0,
                                       (1.0 - cfg.f_in) / 3.0, cfg.f_in};
    // Gate noise as a 16-mask distribution; null means noiseless.
    std::array<double, 16> gate_channel{};
    const std::array<double, 16>* channel = nullptr;
    if (cfg.gate_channel) {
        gate_channel = *cfg.gate_channel;
        channel = &gate_channel;
    } else if (cfg.p2 < 1.0) {
        gate_channel.fill((1.0 - cfg.p2) / 16.0);
        gate_channel[0] += cfg.p2;
        channel = &gate_channel;
    }
    const double flip = cfg.verdict_flip_probability();

    ExactState st(c.register_width);
    for (const Op& op : c.ops) {
        if (const auto* np = std::get_if<NewPairOp>(&op)) {
            st.collapse(np->reg);
            st.tensor(np->reg, werner);
        } else if (const auto* pp = std::get_if<PairPermuteOp>(&op)) {
            st.permute_local(pp->reg, tables, pp->perm_id);
            if (cfg.local_channel) st.convolve_local(pp->reg, *cfg.local_channel);
        } else if (const auto* g = std::get_if<BPGateOp>(&op)) {
            st.apply_gate(g->reg_a, g->reg_b, tables.resolve(pack_gate_id(g->params)),
                          channel);
        } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
            st.measure(m->reg, m->basis, m->mode, flip);
        }
        assert([&] {
            double mass = st.total();
            for (double v : st.dist)
                if (v < 0.0) return false;
            return std::abs(mass + st.rejected - 1.0) < 1e-12;
        }());
    }

    ExactResult result;
    result.rejected_mass = st.rejected;
    MetricsReport& r = result.report;
    r.exact = true;
    const double p = st.total();
    r.p_success = {p, 0.0};
    r.weight_histogram.assign(k + 1, 0.0);
    r.metrics_available = p > 0.0;
    if (!r.metrics_available) {
        result.output_distribution.assign(size_t{1} << (2 * k), 0.0);
        return result;
    }

    // Conditional joint distribution over the k output pairs.
    std::vector<double> out(size_t{1} << (2 * k), 0.0);
    for (size_t j = 0; j < st.dist.size(); ++j) {
        const double v = st.dist[j];
        if (v == 0.0) continue;
        size_t idx = 0;
        for (uint32_t o = 0; o < k; ++o)
            idx |= size_t{st.code_at(j, c.output_pairs[o])} << (2 * o);
        out[idx] += v / p;
    }

    double f_out_sum = 0.0;
    double f_a = 0.0;
    std::optional<PatternDecoder> decoder;
    if (opt.code != nullptr) decoder.emplace(*opt.code);
    double f_l_threshold = 0.0, f_l_decoder = 0.0;
    for (size_t idx = 0; idx < out.size(); ++idx) {
        const double v = out[idx];
        if (v == 0.0) continue;
        ErrorPattern pattern;
        int a_count = 0;
        for (uint32_t o = 0; o < k; ++o) {
            const uint8_t code = static_cast<uint8_t>((idx >> (2 * o)) & 3);
            if (code == kBellA) {
                ++a_count;
                continue;
            }
            const PauliLetter l = pair_to_pauli(code);
            if (l == kPauliX || l == kPauliY) pattern.x |= 1u << o;
            if (l == kPauliZ || l == kPauliY) pattern.z |= 1u << o;
        }
        f_out_sum += v * a_count;
        if (a_count == static_cast<int>(k)) f_a += v;
        r.weight_histogram[static_cast<size_t>(k) - static_cast<size_t>(a_count)] += v;
        if (decoder) {
            if (pattern.weight() <= opt.code->correctable_weight()) f_l_threshold += v;
            if (decoder->corrects(pattern)) f_l_decoder += v;
        }
    }
    r.f_out = {k > 0 ? f_out_sum / k : 1.0, 0.0};
    r.f_a = {f_a, 0.0};
    if (decoder) {
        r.f_l = Estimate{f_l_threshold, 0.0};
        r.f_l_decoder = Estimate{f_l_decoder, 0.0};
    }

    // Pairwise mutual information from two-pair marginals of `out`.
    if (k >= 2) {
        double mi = 0.0;
        for (uint32_t i = 0; i < k; ++i) {
            for (uint32_t j2 = i + 1; j2 < k; ++j2) {
                double joint[16] = {0.0};
                for (size_t idx = 0; idx < out.size(); ++idx) {
                    if (out[idx] == 0.0) continue;
                    const size_t a = (idx >> (2 * i)) & 3, b = (idx >> (2 * j2)) & 3;
                    joint[(a << 2) | b] += out[idx];
                }
                double pa[4] = {0.0}, pb[4] = {0.0};
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        pa[a] += joint[(a << 2) | b];
                        pb[b] += joint[(a << 2) | b];
                    }
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        const double pab = joint[(a << 2) | b];
                        if (pab > 0.0) mi += pab * std::log2(pab / (pa[a] * pb[b]));
                    }
            }
        }
        r.mutual_info = Estimate{mi, 0.0};
    }

    result.output_distribution = std::move(out);
    return result;
}

}  // namespace bellperm
