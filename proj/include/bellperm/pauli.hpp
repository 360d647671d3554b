#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bellperm/bell.hpp"

namespace bellperm {

// Hermitian Pauli operator on up to 32 qubits, stored as
//
//     i^phase_exp * (prod_q X_q^{x bit q}) * (prod_q Z_q^{z bit q})
//
// with phase_exp mod 4. Qubits with both bits set contribute an XZ = -iY
// factor, so a Hermitian operator always has phase_exp == popcount(x & z)
// (mod 2); sign() converts the internal exponent into the +/-1 prefactor of
// the conventional IXYZ letter string.
struct PauliOperator {
    uint32_t n = 0;
    uint32_t x = 0;
    uint32_t z = 0;
    uint8_t phase_exp = 0;

    static PauliOperator identity(uint32_t n) { return {n, 0, 0, 0}; }

    static PauliOperator single(uint32_t n, uint32_t qubit, PauliLetter p) {
        assert(qubit < n);
        PauliOperator out{n, 0, 0, 0};
        switch (p) {
            case kPauliI: break;
            case kPauliX: out.x = 1u << qubit; break;
            case kPauliZ: out.z = 1u << qubit; break;
            case kPauliY:
                out.x = 1u << qubit;
                out.z = 1u << qubit;
                out.phase_exp = 1;  // Y = i X Z
                break;
        }
        return out;
    }

    PauliLetter letter_at(uint32_t qubit) const {
        const int xb = (x >> qubit) & 1;
        const int zb = (z >> qubit) & 1;
        if (xb && zb) return kPauliY;
        if (xb) return kPauliX;
        if (zb) return kPauliZ;
        return kPauliI;
    }

    bool is_hermitian() const {
        return ((phase_exp ^ std::popcount(x & z)) & 1) == 0;
    }

    // +1 or -1 prefactor relative to the plain letter string.
    int sign() const {
        const int e = (phase_exp - std::popcount(x & z)) & 3;
        assert((e & 1) == 0 && "sign of a non-Hermitian Pauli");
        return e == 0 ? 1 : -1;
    }

    PauliOperator operator-() const {
        PauliOperator out = *this;
        out.phase_exp = static_cast<uint8_t>((out.phase_exp + 2) & 3);
        return out;
    }

    // Product rule: commuting the Z block of the left factor past the X block
    // of the right factor contributes (-1)^{|z1 & x2|}.
    PauliOperator operator*(const PauliOperator& o) const {
        assert(n == o.n);
        PauliOperator out;
        out.n = n;
        out.x = x ^ o.x;
        out.z = z ^ o.z;
        out.phase_exp = static_cast<uint8_t>(
            (phase_exp + o.phase_exp + 2 * (std::popcount(z & o.x) & 1)) & 3);
        return out;
    }

    bool commutes_with(const PauliOperator& o) const {
        return ((std::popcount(x & o.z) ^ std::popcount(z & o.x)) & 1) == 0;
    }

    int weight() const { return std::popcount(x | z); }

    // Symplectic (x|z) coordinates, x block in the low n bits.
    uint64_t vec() const { return static_cast<uint64_t>(x) | (static_cast<uint64_t>(z) << n); }

    bool operator==(const PauliOperator&) const = default;

    // Parses strings like "+XZZXI" or "-IIYXZ"; a missing sign means +.
    static PauliOperator from_letters(std::string_view text) {
        PauliOperator out;
        size_t start = 0;
        bool negative = false;
        if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
            negative = text[0] == '-';
            start = 1;
        }
        out.n = static_cast<uint32_t>(text.size() - start);
        if (out.n > 32) throw std::invalid_argument("Pauli string longer than 32 qubits");
        PauliOperator acc = identity(out.n);
        for (uint32_t q = 0; q < out.n; ++q) {
            PauliLetter p;
            switch (text[start + q]) {
                case 'I': p = kPauliI; break;
                case 'X': p = kPauliX; break;
                case 'Y': p = kPauliY; break;
                case 'Z': p = kPauliZ; break;
                default: throw std::invalid_argument("Pauli string must use I, X, Y, Z");
            }
            acc = acc * single(out.n, q, p);
        }
        if (negative) acc = -acc;
        return acc;
    }

    std::string to_letters() const {
        std::string s;
        s.reserve(n + 1);
        s.push_back(sign() > 0 ? '+' : '-');
        for (uint32_t q = 0; q < n; ++q) s.push_back(kPauliLetters[letter_at(q)]);
        return s;
    }
};

}  // namespace bellperm
