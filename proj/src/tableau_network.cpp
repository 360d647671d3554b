#include <algorithm>
#include <stdexcept>

#include "bellperm/bell.hpp"
#include "bellperm/tableau_network.hpp"

namespace bellperm {

namespace {

// Hermitian two-qubit Pauli with the given letters (Y carries its i = XZ
// bookkeeping phase via single()).
PauliOperator two_qubit(PauliLetter l0, PauliLetter l1) {
    PauliOperator p = PauliOperator::identity(2);
    if (l0 != kPauliI) p = p * PauliOperator::single(2, 0, l0);
    if (l1 != kPauliI) p = p * PauliOperator::single(2, 1, l1);
    return p;
}

}  // namespace

BellNetworkTableau::BellNetworkTableau(const std::vector<uint8_t>& codes) {
    rows_.resize(codes.size() * 2);
    for (size_t i = 0; i < codes.size(); ++i) {
        SparseRow& xx = rows_[2 * i];
        xx.sign = (codes[i] & 1) ? 1 : -1;
        xx.count = 2;
        xx.qubit = {static_cast<uint32_t>(2 * i), static_cast<uint32_t>(2 * i + 1)};
        xx.letter = {kPauliX, kPauliX};
        SparseRow& zz = rows_[2 * i + 1];
        zz = xx;
        zz.sign = (codes[i] & 2) ? 1 : -1;
        zz.letter = {kPauliZ, kPauliZ};
    }
}

void BellNetworkTableau::apply_bilateral(const CliffordGate& g, uint32_t pair_a,
                                         uint32_t pair_b) {
    if (g.num_qubits() != 2) throw std::invalid_argument("bilateral gate must act on 2 qubits");
    if (pair_a == pair_b || pair_a >= pair_count() || pair_b >= pair_count())
        throw std::invalid_argument("bad pair indices");
    // Alice copy touches targets[0..1], Bob copy targets[2..3].
    const uint32_t target[4] = {2 * pair_a, 2 * pair_b, 2 * pair_a + 1, 2 * pair_b + 1};
    for (SparseRow& row : rows_) {
        PauliLetter at[4] = {kPauliI, kPauliI, kPauliI, kPauliI};
        bool touched = false;
        for (uint8_t e = 0; e < row.count; ++e) {
            for (int t = 0; t < 4; ++t) {
                if (row.qubit[e] == target[t]) {
                    at[t] = static_cast<PauliLetter>(row.letter[e]);
                    touched = true;
                }
            }
        }
        if (!touched) continue;

        const PauliOperator alice = g.conjugate(two_qubit(at[0], at[1]));
        const PauliOperator bob = g.conjugate(two_qubit(at[2], at[3]));
        SparseRow out;
        out.sign = static_cast<int8_t>(row.sign * alice.sign() * bob.sign());
        const auto push = [&](uint32_t q, PauliLetter l) {
            if (l == kPauliI) return;
            if (out.count == kRowCapacity)
                throw std::runtime_error("stabilizer row outgrew its support capacity");
            out.qubit[out.count] = q;
            out.letter[out.count] = static_cast<uint8_t>(l);
            ++out.count;
        };
        // Merge untouched support with the conjugated letters, keeping the
        // qubit order sorted (targets interleave with the survivors).
        uint8_t e = 0;
        const auto image_at = [&](int t) {
            return t < 2 ? alice.letter_at(static_cast<uint32_t>(t))
                         : bob.letter_at(static_cast<uint32_t>(t - 2));
        };
        int order[4] = {0, 2, 1, 3};  // targets sorted: 2a, 2a+1, 2b, 2b+1
        if (pair_b < pair_a) std::swap(order[0], order[2]), std::swap(order[1], order[3]);
        int next = 0;
        while (e < row.count || next < 4) {
            const bool take_target =
                next < 4 &&
                (e >= row.count || target[order[next]] < row.qubit[e]);
            if (take_target) {
                push(target[order[next]], image_at(order[next]));
                ++next;
            } else if (next < 4 && target[order[next]] == row.qubit[e]) {
                ++e;  // old letter at a target qubit: replaced by its image
            } else {
                push(row.qubit[e], static_cast<PauliLetter>(row.letter[e]));
                ++e;
            }
        }
        row = out;
    }
}

uint8_t BellNetworkTableau::pair_code(uint32_t pair) const {
    int xx_sign = 0, zz_sign = 0;
    for (const SparseRow& row : rows_) {
        if (row.count != 2 || row.qubit[0] != 2 * pair || row.qubit[1] != 2 * pair + 1)
            continue;
        if (row.letter[0] == kPauliX && row.letter[1] == kPauliX) xx_sign = row.sign;
        if (row.letter[0] == kPauliZ && row.letter[1] == kPauliZ) zz_sign = row.sign;
    }
    if (xx_sign == 0 || zz_sign == 0)
        throw std::runtime_error("pair " + std::to_string(pair) +
                                 " is not in product form");
    return static_cast<uint8_t>((xx_sign > 0 ? 1 : 0) | (zz_sign > 0 ? 2 : 0));
}

StabilizerTableau BellNetworkTableau::to_dense() const {
    const uint32_t n_qubits = pair_count() * 2;
    if (n_qubits > 32) throw std::invalid_argument("dense copy limited to 32 qubits");
    StabilizerTableau t(n_qubits);
    for (const SparseRow& row : rows_) {
        PauliOperator p = PauliOperator::identity(n_qubits);
        for (uint8_t e = 0; e < row.count; ++e)
            p = p * PauliOperator::single(n_qubits, row.qubit[e],
                                          static_cast<PauliLetter>(row.letter[e]));
        t.add_row(row.sign > 0 ? p : -p);
    }
    return t;
}

}  // namespace bellperm
