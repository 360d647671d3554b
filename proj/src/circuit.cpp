#include "bellperm/circuit.hpp"

#include <bit>
#include <stdexcept>

namespace bellperm {

CircuitStats circuit_stats(const Circuit& c) {
    CircuitStats s;
    s.register_width = c.register_width;
    s.outputs = static_cast<uint32_t>(c.output_pairs.size());
    for (const Op& op : c.ops) {
        if (std::holds_alternative<BPGateOp>(op)) ++s.length;
        if (std::holds_alternative<NewPairOp>(op)) ++s.raw_pairs;
    }
    return s;
}

namespace {

std::string at_op(size_t i) { return "op " + std::to_string(i) + ": "; }

}  // namespace

std::vector<std::string> validate(const Circuit& c) {
    std::vector<std::string> bad;
    const uint32_t r = c.register_width;
    if (r == 0) bad.push_back("register width is zero");
    if (c.output_pairs.empty()) bad.push_back("no output pairs declared");
    if (c.output_pairs.size() >= r) {
        bad.push_back("needs at least one sacrificial register (k < r)");
    }
    std::vector<bool> is_output(r, false);
    for (uint32_t reg : c.output_pairs) {
        if (reg >= r) {
            bad.push_back("output register " + std::to_string(reg) + " out of range");
        } else if (is_output[reg]) {
            bad.push_back("output register " + std::to_string(reg) + " listed twice");
        } else {
            is_output[reg] = true;
        }
    }

    std::vector<bool> live(r, false);
    uint32_t raw_pairs = 0;
    auto in_range = [&](size_t i, uint32_t reg) {
        if (reg < r) return true;
        bad.push_back(at_op(i) + "register " + std::to_string(reg) + " out of range");
        return false;
    };
    for (size_t i = 0; i < c.ops.size(); ++i) {
        const Op& op = c.ops[i];
        if (const auto* np = std::get_if<NewPairOp>(&op)) {
            ++raw_pairs;
            if (!in_range(i, np->reg)) continue;
            if (live[np->reg]) {
                bad.push_back(at_op(i) + "new pair would overwrite live register " +
                              std::to_string(np->reg));
            }
            live[np->reg] = true;
        } else if (const auto* pp = std::get_if<PairPermuteOp>(&op)) {
            if (pp->perm_id >= number_of_local_perms()) {
                bad.push_back(at_op(i) + "permutation id out of range");
            }
            if (in_range(i, pp->reg) && !live[pp->reg]) {
                bad.push_back(at_op(i) + "permutes dead register " + std::to_string(pp->reg));
            }
        } else if (const auto* g = std::get_if<BPGateOp>(&op)) {
            const GateParams& p = g->params;
            if (p.coset >= kNumCosets || p.local_a >= kNumLocalClasses ||
                p.local_b >= kNumLocalClasses || p.pauli_a > 3 || p.pauli_b > 3) {
                bad.push_back(at_op(i) + "gate parameters out of range");
            }
            const bool a_ok = in_range(i, g->reg_a);
            const bool b_ok = in_range(i, g->reg_b);
            if (a_ok && b_ok && g->reg_a == g->reg_b) {
                bad.push_back(at_op(i) + "gate needs two distinct registers");
            }
            if (a_ok && !live[g->reg_a]) {
                bad.push_back(at_op(i) + "gate reads dead register " + std::to_string(g->reg_a));
            }
            if (b_ok && !live[g->reg_b]) {
                bad.push_back(at_op(i) + "gate reads dead register " + std::to_string(g->reg_b));
            }
        } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
            if (static_cast<uint8_t>(m->basis) > 2) bad.push_back(at_op(i) + "bad basis");
            if (static_cast<uint8_t>(m->mode) > 1) bad.push_back(at_op(i) + "bad mode");
            if (!in_range(i, m->reg)) continue;
            if (!live[m->reg]) {
                bad.push_back(at_op(i) + "measures dead register " + std::to_string(m->reg));
            }
            live[m->reg] = false;
        }
    }
    for (uint32_t reg : c.output_pairs) {
        if (reg < r && !live[reg]) {
            bad.push_back("output register " + std::to_string(reg) + " is not live at the end");
        }
    }
    if (raw_pairs != c.declared_raw_pairs) {
        bad.push_back("declared raw pairs (" + std::to_string(c.declared_raw_pairs) +
                      ") do not match new-pair ops (" + std::to_string(raw_pairs) + ")");
    }
    return bad;
}

bool measurement_passes(MeasureBasis basis, MeasureMode mode, uint8_t code) {
    const bool xx = code & 1;
    const bool zz = code & 2;
    bool plus;  // eigenvalue of the joint two-sided operator
    switch (basis) {
        case MeasureBasis::kX: plus = xx; break;
        case MeasureBasis::kZ: plus = zz; break;
        default: plus = xx != zz; break;  // YY = -(XX)(ZZ)
    }
    return mode == MeasureMode::kCoincidence ? plus : !plus;
}

namespace {

GateParams cnot_params(const GateTables& t) { return unpack_gate_id(t.cnot_id); }

}  // namespace

Circuit build_passthrough(uint32_t k) {
    Circuit c;
    c.register_width = k + 1;
    c.declared_raw_pairs = k;
    for (uint32_t reg = 0; reg < k; ++reg) {
        c.ops.push_back(NewPairOp{reg});
        c.output_pairs.push_back(reg);
    }
    return c;
}

Circuit build_single_selection(MeasureBasis basis, const GateTables& t) {
    Circuit c;
    c.register_width = 2;
    c.output_pairs = {0};
    c.declared_raw_pairs = 2;
    c.ops.push_back(NewPairOp{0});
    c.ops.push_back(NewPairOp{1});
    switch (basis) {
        case MeasureBasis::kZ:
            // The textbook round: the kept pair controls, Z errors on the
            // sacrificial pair reveal X-type errors on the kept one.
            c.ops.push_back(BPGateOp{cnot_params(t), 0, 1});
            c.ops.push_back(MeasureOp{MeasureBasis::kZ, MeasureMode::kCoincidence, 1});
            break;
        case MeasureBasis::kX:
            // Dual round: sacrificial pair controls and is read out in X.
            c.ops.push_back(BPGateOp{cnot_params(t), 1, 0});
            c.ops.push_back(MeasureOp{MeasureBasis::kX, MeasureMode::kCoincidence, 1});
            break;
        case MeasureBasis::kY:
            c.ops.push_back(BPGateOp{cnot_params(t), 0, 1});
            c.ops.push_back(MeasureOp{MeasureBasis::kY, MeasureMode::kAnticoincidence, 1});
            break;
    }
    return c;
}

Circuit build_double_selection(DoubleSelectionVariant variant, const GateTables& t) {
    Circuit c;
    c.register_width = 3;
    c.output_pairs = {0};
    c.declared_raw_pairs = 3;
    c.ops.push_back(NewPairOp{0});
    c.ops.push_back(NewPairOp{1});
    c.ops.push_back(NewPairOp{2});
    const GateParams cnot = cnot_params(t);
    if (variant == DoubleSelectionVariant::kZX) {
        // Z-selection on the kept pair, with the checking pair itself checked
        // by a second sacrificial pair read out in X.
        c.ops.push_back(BPGateOp{cnot, 0, 1});
        c.ops.push_back(BPGateOp{cnot, 2, 1});
        c.ops.push_back(MeasureOp{MeasureBasis::kZ, MeasureMode::kCoincidence, 1});
        c.ops.push_back(MeasureOp{MeasureBasis::kX, MeasureMode::kCoincidence, 2});
    } else {
        c.ops.push_back(BPGateOp{cnot, 1, 0});
        c.ops.push_back(BPGateOp{cnot, 1, 2});
        c.ops.push_back(MeasureOp{MeasureBasis::kX, MeasureMode::kCoincidence, 1});
        c.ops.push_back(MeasureOp{MeasureBasis::kZ, MeasureMode::kCoincidence, 2});
    }
    return c;
}

Circuit build_blockwise_pumping(uint32_t k, const GateTables& t) {
    if (k == 0) throw std::invalid_argument("blockwise pumping needs at least one output");
    Circuit c;
    c.register_width = k + 1;
    c.declared_raw_pairs = 2 * k;
    const GateParams cnot = cnot_params(t);
    for (uint32_t reg = 0; reg < k; ++reg) {
        c.output_pairs.push_back(reg);
        c.ops.push_back(NewPairOp{reg});
        c.ops.push_back(NewPairOp{k});
        c.ops.push_back(BPGateOp{cnot, reg, k});
        c.ops.push_back(MeasureOp{MeasureBasis::kZ, MeasureMode::kCoincidence, k});
    }
    return c;
}

Circuit build_five_to_two(const GateTables& t) {
    Circuit c;
    c.register_width = 5;
    c.output_pairs = {0, 1};
    c.declared_raw_pairs = 5;
    for (uint32_t reg = 0; reg < 5; ++reg) c.ops.push_back(NewPairOp{reg});
    const GateParams cnot = cnot_params(t);
    c.ops.push_back(BPGateOp{cnot, 0, 2});
    c.ops.push_back(MeasureOp{MeasureBasis::kZ, MeasureMode::kCoincidence, 2});
    c.ops.push_back(BPGateOp{cnot, 1, 3});
    c.ops.push_back(BPGateOp{cnot, 4, 3});
    c.ops.push_back(MeasureOp{MeasureBasis::kZ, MeasureMode::kCoincidence, 3});
    c.ops.push_back(MeasureOp{MeasureBasis::kX, MeasureMode::kCoincidence, 4});
    return c;
}

Circuit build_truncated_hashing(uint32_t n, uint32_t k, const GateTables& t) {
    if (n < 2 || std::popcount(n) != 1 || std::popcount(k) != 1 || k >= n) {
        throw std::invalid_argument("truncated hashing needs powers of two with k < n");
    }
    Circuit c;
    c.register_width = n;
    c.declared_raw_pairs = n;
    for (uint32_t i = 0; i < k; ++i) c.output_pairs.push_back(i);
    for (uint32_t i = 0; i < n; ++i) c.ops.push_back(NewPairOp{i});
    const GateParams cnot = cnot_params(t);
    for (uint32_t m = k; m < n; ++m) {
        const bool z_basis = (m - k) % 2 == 0;
        // Parity over every register still live when this check runs: the
        // kept block plus the not-yet-measured sacrificial ones.
        for (uint32_t s = 0; s < n; ++s) {
            if (s == m || (s >= k && s < m)) continue;
            if (z_basis) {
                c.ops.push_back(BPGateOp{cnot, s, m});  // target accumulates control's Z
            } else {
                c.ops.push_back(BPGateOp{cnot, m, s});  // control accumulates target's X
            }
        }
        c.ops.push_back(MeasureOp{z_basis ? MeasureBasis::kZ : MeasureBasis::kX,
                                  MeasureMode::kCoincidence, m});
    }
    return c;
}

}  // namespace bellperm
