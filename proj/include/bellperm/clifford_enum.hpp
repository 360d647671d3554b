#pragma once

#include <vector>

#include "bellperm/tableau.hpp"

namespace bellperm {

// All 24 single-qubit Clifford gates, as signed generator images.
const std::vector<CliffordGate>& enumerate_single_qubit_cliffords();

// The 6 single-qubit classes modulo Pauli factors, i.e. the permutations of
// the X/Y/Z axes, each as its all-plus-sign canonical representative.
// Ordered lexicographically by (image-of-X letter, image-of-Z letter) with
// X < Y < Z, which puts the identity at index 1.
const std::vector<CliffordGate>& enumerate_single_qubit_phaseless();

// The 720 two-qubit classes modulo Pauli factors (the symplectic group
// Sp(4, F2)), each as its all-plus-sign canonical representative, in a
// deterministic enumeration order.
const std::vector<CliffordGate>& enumerate_two_qubit_phaseless();

// Joint XX phase operator of pair `pair` in a register of `count` Bell
// pairs laid out as Alice qubits [0, count) and Bob qubits [count, 2*count).
PauliOperator pair_xx(uint32_t pair, uint32_t count);
PauliOperator pair_zz(uint32_t pair, uint32_t count);

// Stabilizer tableau of Bell pairs with the given phase codes.
StabilizerTableau bell_pair_tableau(const std::vector<uint8_t>& codes);

// Reads pair `pair`'s phase code back out of a (possibly conjugated) Bell
// tableau. Throws if either phase is not deterministic, which cannot happen
// after applying a Bell-preserving gate.
uint8_t read_pair_code(const StabilizerTableau& t, uint32_t pair, uint32_t count);

// The same-gate-on-both-sides construction: g acting on Alice's qubits and
// an identical copy on Bob's, in the layout used by bell_pair_tableau.
CliffordGate bilateral(const CliffordGate& g, uint32_t pair_count);

// Named reference gates (control/first operand is qubit 0).
CliffordGate hadamard_gate();
CliffordGate cnot_gate();
CliffordGate swap_gate();
CliffordGate cz_gate();

}  // namespace bellperm
