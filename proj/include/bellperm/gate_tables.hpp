#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bellperm/bell.hpp"
#include "bellperm/tableau.hpp"

namespace bellperm {

// The group of two-pair operations that keep a register of Bell pairs
// Bell-diagonal factors into three layers:
//
//   1. one of 20 coset representatives of the two-qubit classes modulo
//      products of single-qubit classes, applied to both sides,
//   2. one single-qubit class per pair (6 each), applied to both sides,
//   3. one Pauli per pair applied to one side only, which XORs the pair's
//      phase code.
//
// Every layer acts on the 4-bit joint code (first pair in the high two bits)
// by table lookup, so a gate costs three loads and an XOR regardless of
// register size. The tables below are derived at runtime from the stabilizer
// formalism; nothing in them is hand-entered.
inline constexpr uint32_t kNumCosets = 20;
inline constexpr uint32_t kNumLocalClasses = 6;
inline constexpr uint32_t kNumTwoQubitClasses = 720;
inline constexpr uint32_t kNumTwoPairGates =
    kNumCosets * kNumLocalClasses * kNumLocalClasses * 4 * 4;  // 11520

// Which coset a two-qubit class belongs to and the per-pair local classes
// that move the representative onto it.
struct GateFactor {
    uint8_t coset;
    uint8_t local_a;
    uint8_t local_b;

    bool operator==(const GateFactor&) const = default;
};

struct GateParams {
    uint8_t coset;    // [0, 20)
    uint8_t local_a;  // [0, 6)
    uint8_t local_b;  // [0, 6)
    uint8_t pauli_a;  // PauliLetter on the first pair's near qubit
    uint8_t pauli_b;  // PauliLetter on the second pair's near qubit

    bool operator==(const GateParams&) const = default;
};

constexpr uint16_t pack_gate_id(const GateParams& p) {
    return static_cast<uint16_t>(
        (((p.coset * kNumLocalClasses + p.local_a) * kNumLocalClasses + p.local_b) * 4 + p.pauli_a) * 4 +
        p.pauli_b);
}

constexpr GateParams unpack_gate_id(uint16_t id) {
    GateParams p;
    p.pauli_b = id & 3;
    id >>= 2;
    p.pauli_a = id & 3;
    id >>= 2;
    p.local_b = id % kNumLocalClasses;
    id /= kNumLocalClasses;
    p.local_a = id % kNumLocalClasses;
    p.coset = static_cast<uint8_t>(id / kNumLocalClasses);
    return p;
}

class GateTables {
public:
    // Derives all tables from the stabilizer oracle (a few milliseconds).
    static GateTables derive();

    // Process-wide tables: loaded from BELLPERM_TABLES or a use_file() path
    // when one is set, derived otherwise. Derivation happens once.
    static const GateTables& instance();
    static void use_file(const std::string& path);

    static GateTables from_json_file(const std::string& path);
    void write_json_file(const std::string& path) const;

    // Joint code permutations of the 20 coset representatives.
    std::array<std::array<uint8_t, 16>, kNumCosets> coset_perm{};
    // Single-pair code permutations of the 6 single-qubit classes.
    std::array<std::array<uint8_t, 4>, kNumLocalClasses> local_perm{};
    // Code XOR mask of a one-sided Pauli, indexed by PauliLetter.
    std::array<uint8_t, 4> pauli_mask{};
    // Coset decomposition of each enumerated two-qubit class.
    std::array<GateFactor, kNumTwoQubitClasses> class_factor{};

    // Gate ids of the plain (no one-sided Pauli) named gates.
    uint16_t cnot_id = 0;
    uint16_t cz_id = 0;
    uint16_t swap_id = 0;

    uint8_t apply_joint(uint16_t gate_id, uint8_t joint) const {
        const GateParams p = unpack_gate_id(gate_id);
        const uint8_t j = static_cast<uint8_t>((local_perm[p.local_a][joint >> 2] << 2) |
                                               local_perm[p.local_b][joint & 3]);
        return coset_perm[p.coset][j] ^ static_cast<uint8_t>((pauli_mask[p.pauli_a] << 2) | pauli_mask[p.pauli_b]);
    }

    // Hot-loop form: the id is unpacked once and the lookups keep hitting the
    // same few hundred table bytes.
    struct Resolved {
        const uint8_t* local_a;
        const uint8_t* local_b;
        const uint8_t* coset;
        uint8_t mask;

        uint8_t apply(uint8_t joint) const {
            return coset[(local_a[joint >> 2] << 2) | local_b[joint & 3]] ^ mask;
        }
    };

    Resolved resolve(uint16_t gate_id) const {
        const GateParams p = unpack_gate_id(gate_id);
        return Resolved{local_perm[p.local_a].data(), local_perm[p.local_b].data(),
                        coset_perm[p.coset].data(),
                        static_cast<uint8_t>((pauli_mask[p.pauli_a] << 2) | pauli_mask[p.pauli_b])};
    }

    // Gate id of an arbitrary two-qubit Clifford (its class) with one-sided
    // Paulis on top. Throws if the gate is not in the enumerated group.
    uint16_t gate_id_for(const CliffordGate& two_qubit, uint8_t pauli_a = 0, uint8_t pauli_b = 0) const;

    // FNV-1a over the canonical byte serialization of every table above.
    uint64_t hash() const;

    bool operator==(const GateTables&) const = default;
};

// All 11520 joint-code permutations, indexed by gate id. Large (180 KiB), so
// built on demand; the simulation path always uses the factored lookups.
std::vector<std::array<uint8_t, 16>> fused_two_pair_table(const GateTables& t);

}  // namespace bellperm
