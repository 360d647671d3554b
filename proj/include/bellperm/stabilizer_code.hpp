#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bellperm/bell.hpp"
#include "bellperm/pauli.hpp"

// Error-corrected teleportation support: teleporting one half of each
// purified pair imprints a Pauli by-product error on the corresponding
// logical-block qubit, and a stabilizer code decides whether the resulting
// pattern is survivable.  This header maps Bell codes to those by-product
// Paulis and scores patterns against a code, either by the weight-threshold
// rule or with a minimum-weight syndrome decoder.

namespace bellperm {

// The by-product Pauli is the letter whose phase mask sends the pair's code
// to A, i.e. the one-sided correction the receiver would have to apply:
// A -> I, B -> Y, C -> X, D -> Z.
PauliLetter pair_to_pauli(uint8_t code);

// Pauli error pattern on up to 32 qubits, phases ignored: bit q of x / z is
// the X / Z component on qubit q (a Y sets both).
struct ErrorPattern {
    uint32_t x = 0;
    uint32_t z = 0;

    int weight() const { return std::popcount(x | z); }

    bool operator==(const ErrorPattern&) const = default;
};

// Pattern imprinted by teleporting pairs with the given output codes; qubit
// q of the pattern corresponds to codes[q].
ErrorPattern pattern_from_codes(const std::vector<uint8_t>& codes);

// Stabilizer code with one logical qubit: n - 1 commuting, independent
// generators on n physical qubits.  The constructor validates all of that
// and recomputes the distance from scratch (minimum weight over the
// commutant of the group, excluding the group itself), so distance() is a
// verified property, not a declaration taken on faith.
class StabilizerCode {
  public:
    StabilizerCode(std::string name, int distance,
                   std::vector<PauliOperator> generators);

    // The four cyclic shifts of XZZXI: the [[5,1,3]] code.
    static StabilizerCode five_qubit();
    // An [[11,1,5]] code; see data/codes/eleven_qubit.stab for how it is
    // constructed (shortening a self-dual length-12 cyclic code).
    static StabilizerCode eleven_qubit();
    // Text format: '#' comments, "code <name>", "distance <d>", then one
    // signed Pauli row per generator.
    static StabilizerCode from_file(const std::string& path);

    const std::string& name() const { return name_; }
    int n_phys() const { return n_; }
    int distance() const { return distance_; }
    const std::vector<PauliOperator>& generators() const { return generators_; }

    // Largest t with 2t + 1 <= distance; the threshold rule accepts
    // patterns of weight <= t.
    int correctable_weight() const { return (distance_ - 1) / 2; }

    // Bit g is set iff the pattern anticommutes with generator g.
    uint32_t syndrome(const ErrorPattern& p) const;
    // Membership in the generated group, phases ignored.
    bool in_stabilizer(const ErrorPattern& p) const;
    // Exhaustive re-derivation of the distance; the constructor already ran
    // it, exposed for tests that want the check to be repeatable.
    int min_logical_weight() const;

  private:
    std::string name_;
    int n_ = 0;
    int distance_ = 0;
    std::vector<PauliOperator> generators_;
    std::vector<ErrorPattern> gens_;      // mask view of generators_
    std::vector<uint64_t> span_rows_;     // echelon basis, indexed by leading bit
};

// How the minimum-weight correction for a pattern's syndrome relates to the
// pattern itself: residual identity, residual a non-identity stabilizer
// (different pattern, same effect on the code space), or a logical error.
enum class DecodeResult {
    kExactRecovery,
    kDegenerateRecovery,
    kLogicalError,
};

// Syndrome-indexed minimum-weight decoder.  Leaders are assigned by
// scanning patterns in (weight, support, letter) order, so the table is
// deterministic; the scan stops once every syndrome has a representative.
class PatternDecoder {
  public:
    explicit PatternDecoder(StabilizerCode code);

    const StabilizerCode& code() const { return code_; }
    ErrorPattern leader(uint32_t syndrome) const;
    DecodeResult classify(const ErrorPattern& p) const;
    // True unless decoding leaves a logical error.
    bool corrects(const ErrorPattern& p) const {
        return classify(p) != DecodeResult::kLogicalError;
    }

  private:
    StabilizerCode code_;
    std::vector<ErrorPattern> leaders_;
};

// Fraction of accepted samples (each a vector of output-pair codes, one per
// physical qubit) whose error pattern the code survives.  The threshold
// rule counts weight <= correctable_weight(); the decoder rule counts
// patterns whose decode residual is in the stabilizer group.  Both throw if
// a sample's pair count differs from the code's qubit count.
double logical_fidelity_threshold(const std::vector<std::vector<uint8_t>>& samples,
                                  const StabilizerCode& code);
double logical_fidelity_decoder(const std::vector<std::vector<uint8_t>>& samples,
                                const PatternDecoder& decoder);

}  // namespace bellperm
