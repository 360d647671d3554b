#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bellperm/gate_tables.hpp"

namespace bellperm {

// A circuit acts on `register_width` pair slots. Registers start empty; a
// NewPair op loads a fresh raw pair, gates and permutations act on live
// registers, and a measurement consumes its register (a later NewPair may
// refill it). The declared raw-pair count n is checked against the number of
// NewPair ops rather than trusted.

enum class MeasureBasis : uint8_t { kX = 0, kY = 1, kZ = 2 };
enum class MeasureMode : uint8_t { kCoincidence = 0, kAnticoincidence = 1 };

struct NewPairOp {
    uint32_t reg;
    bool operator==(const NewPairOp&) const = default;
};

// One of the 24 single-pair code permutations: a single-qubit class applied
// to both sides plus a one-sided Pauli. perm_id = local_class * 4 + pauli.
struct PairPermuteOp {
    uint8_t perm_id;
    uint32_t reg;
    bool operator==(const PairPermuteOp&) const = default;
};

struct BPGateOp {
    GateParams params;
    uint32_t reg_a;
    uint32_t reg_b;
    bool operator==(const BPGateOp&) const = default;
};

struct MeasureOp {
    MeasureBasis basis;
    MeasureMode mode;
    uint32_t reg;
    bool operator==(const MeasureOp&) const = default;
};

using Op = std::variant<NewPairOp, PairPermuteOp, BPGateOp, MeasureOp>;

struct Circuit {
    uint32_t register_width = 0;          // r
    std::vector<Op> ops;
    std::vector<uint32_t> output_pairs;   // the k registers kept at the end
    uint32_t declared_raw_pairs = 0;      // n

    bool operator==(const Circuit&) const = default;
};

struct CircuitStats {
    uint32_t length = 0;  // number of two-pair gates
    uint32_t raw_pairs = 0;
    uint32_t outputs = 0;
    uint32_t register_width = 0;
};

CircuitStats circuit_stats(const Circuit& c);

// Structural and liveness checks. Returns human-readable violations, empty
// when the circuit is well-formed; never throws.
std::vector<std::string> validate(const Circuit& c);

inline bool is_valid(const Circuit& c) { return validate(c).empty(); }

inline uint8_t number_of_local_perms() { return 24; }

inline uint8_t apply_pair_permute(const GateTables& t, uint8_t perm_id, uint8_t code) {
    return t.local_perm[perm_id >> 2][code] ^ t.pauli_mask[perm_id & 3];
}

// True verdict of a coincidence / anti-coincidence measurement on a pair
// with the given code: both sides measure the basis operator and compare, so
// the verdict is the eigenvalue of the joint operator (XX, -YY·(XX·ZZ)
// structure folded in for Y, ZZ for Z).
bool measurement_passes(MeasureBasis basis, MeasureMode mode, uint8_t code);

// Literature baseline constructors. All of them keep register 0..k-1 as
// outputs and pass the all-A input with certainty in the noiseless limit.

// The no-purification baseline: loads k raw pairs and keeps them untouched
// (one spare register, since outputs must be a strict subset).
Circuit build_passthrough(uint32_t k);

Circuit build_single_selection(MeasureBasis basis, const GateTables& t = GateTables::instance());

enum class DoubleSelectionVariant { kZX, kXZ };
Circuit build_double_selection(DoubleSelectionVariant variant,
                               const GateTables& t = GateTables::instance());

// One Z-basis single-selection round per output, all rounds sharing one
// sacrificial register: the blockwise entanglement-pumping baseline
// (k outputs, 2k raw pairs, k gates). Equals single selection at k = 1.
Circuit build_blockwise_pumping(uint32_t k, const GateTables& t = GateTables::instance());

// A 5-raw-pair, 2-output reference: single Z-selection protects output 0
// and a full ZX double-selection round protects output 1 (one of several
// reasonable hand-built layouts; kept fixed so sweeps are comparable).
Circuit build_five_to_two(const GateTables& t = GateTables::instance());

// One round of the truncated hashing scheme: n-k parity checks, alternating
// Z and X bases, each accumulated into the sacrificial register by a chain
// of two-pair CNOTs over the still-live registers. n and k must be powers of
// two with k < n; (2, 1) reduces to Z-basis single selection.
Circuit build_truncated_hashing(uint32_t n, uint32_t k,
                                const GateTables& t = GateTables::instance());

}  // namespace bellperm
