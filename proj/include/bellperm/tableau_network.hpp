#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bellperm/tableau.hpp"

namespace bellperm {

// Stabilizer tableau of N Bell pairs scaled up to network sizes.  Pair i
// lives on qubits 2i (Alice) and 2i+1 (Bob), with one row per stabilizer
// generator.  Rows are stored as sparse support lists because a dense
// 2N x 2N bit matrix is out of reach at 10^6 pairs, but every gate still
// sweeps all 2N rows — the per-gate cost any tableau backend pays — so this
// is the linear-time reference the O(1) diagonal representation is
// benchmarked against.
class BellNetworkTableau {
  public:
    // Largest row support carried before apply_bilateral throws; bilateral
    // two-pair gates grow a row by at most one pair's worth of qubits.
    static constexpr uint32_t kRowCapacity = 16;

    explicit BellNetworkTableau(const std::vector<uint8_t>& codes);

    uint32_t pair_count() const { return static_cast<uint32_t>(rows_.size() / 2); }

    // Conjugates every row by the 2-qubit gate g acting on Alice's qubits of
    // pairs (pair_a, pair_b) together with an identical copy on Bob's.
    void apply_bilateral(const CliffordGate& g, uint32_t pair_a, uint32_t pair_b);

    // Phase code of a pair whose +-XX / +-ZZ rows are currently stored
    // verbatim (true for any pair a gate sequence has returned to a product
    // state row-by-row); throws if the rows are mixed into other pairs.
    uint8_t pair_code(uint32_t pair) const;

    // Dense copy for cross-checks against the oracle; limited to the 32
    // qubits a PauliOperator can hold.
    StabilizerTableau to_dense() const;

    bool operator==(const BellNetworkTableau&) const = default;

  private:
    struct SparseRow {
        int8_t sign = 1;
        uint8_t count = 0;
        std::array<uint32_t, kRowCapacity> qubit{};  // sorted; unused slots zero
        std::array<uint8_t, kRowCapacity> letter{};  // PauliLetter, never I

        bool operator==(const SparseRow&) const = default;
    };

    std::vector<SparseRow> rows_;
};

}  // namespace bellperm
