#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bellperm {

// A Bell pair is stored as two phase bits: whether the shared pair is a +1
// eigenstate of X(A)X(B) and of Z(A)Z(B). Bit value 1 means phase +.
// Packed code = xx_bit | (zz_bit << 1), giving:
//
//   code 3 = (+XX, +ZZ)  "A"  |00>+|11>   the target state
//   code 0 = (-XX, -ZZ)  "B"  |01>-|10>   (singlet)
//   code 1 = (+XX, -ZZ)  "C"  |01>+|10>
//   code 2 = (-XX, +ZZ)  "D"  |00>-|11>
//
// The letter labels are reporting sugar only; all dynamics act on the bits.
// The assignment of C and D follows the stabilizer phases of the kets as
// computed by the tableau oracle (see tests), which is also the assignment
// under which a Z-basis coincidence passes exactly {A, D}.
inline constexpr uint8_t kBellB = 0;
inline constexpr uint8_t kBellC = 1;
inline constexpr uint8_t kBellD = 2;
inline constexpr uint8_t kBellA = 3;

struct BellState {
    bool xx_phase = true;
    bool zz_phase = true;

    constexpr uint8_t code() const {
        return static_cast<uint8_t>((xx_phase ? 1 : 0) | (zz_phase ? 2 : 0));
    }
    static constexpr BellState from_code(uint8_t c) {
        return BellState{(c & 1) != 0, (c & 2) != 0};
    }
    constexpr bool operator==(const BellState&) const = default;
};

inline char bell_code_label(uint8_t code) {
    static constexpr char kLabels[4] = {'B', 'C', 'D', 'A'};
    return kLabels[code & 3];
}

inline uint8_t bell_code_from_label(char label) {
    switch (label) {
        case 'A': return kBellA;
        case 'B': return kBellB;
        case 'C': return kBellC;
        case 'D': return kBellD;
        default: throw std::invalid_argument("unknown Bell state label");
    }
}

// Two-character phase form of one pair, xx bit first: A -> "11", C -> "10".
inline std::string bell_code_to_string(uint8_t code) {
    std::string s(2, '0');
    s[0] = (code & 1) ? '1' : '0';
    s[1] = (code & 2) ? '1' : '0';
    return s;
}

// One-sided Pauli applied to a pair toggles phase bits: conjugating the
// stabilizers by X flips the sign of ZZ only, Z flips XX only, Y flips both.
// Masks are in the same 2-bit packing as codes and act by XOR.
enum PauliLetter : uint8_t { kPauliI = 0, kPauliX = 1, kPauliY = 2, kPauliZ = 3 };

inline constexpr uint8_t kPauliPhaseMask[4] = {
    0,  // I: nothing
    2,  // X: flips zz
    3,  // Y: flips both
    1,  // Z: flips xx
};

inline constexpr char kPauliLetters[5] = "IXYZ";

// Dense register of Bell pairs, two bits per pair, 32 pairs per 64-bit word.
// Pair i lives at bits [2i, 2i+2) of word i/32; unused padding bits are kept
// zero so whole-word comparisons and hashing stay meaningful. Every accessor
// touches at most one word, so gate application cost does not grow with the
// register size.
class RegisterState {
  public:
    RegisterState() = default;

    explicit RegisterState(uint32_t n_pairs)
        : n_pairs_(n_pairs), words_((n_pairs + 31) / 32, 0) {}

    uint32_t size() const { return n_pairs_; }

    uint8_t get_pair(uint32_t i) const {
        assert(i < n_pairs_);
        return static_cast<uint8_t>((words_[i >> 5] >> ((i & 31) * 2)) & 3);
    }

    void set_pair(uint32_t i, uint8_t code) {
        assert(i < n_pairs_);
        assert(code < 4);
        uint64_t& w = words_[i >> 5];
        const int shift = (i & 31) * 2;
        w = (w & ~(uint64_t{3} << shift)) | (uint64_t{code} << shift);
    }

    void apply_pauli_mask(uint32_t i, uint8_t mask) {
        assert(i < n_pairs_);
        assert(mask < 4);
        words_[i >> 5] ^= uint64_t{mask} << ((i & 31) * 2);
    }

    // Canonical textual form: per pair, the xx bit then the zz bit.
    // [A, B, C] prints as "110010".
    std::string to_string() const {
        std::string s(2 * static_cast<size_t>(n_pairs_), '0');
        for (uint32_t i = 0; i < n_pairs_; ++i) {
            const uint8_t c = get_pair(i);
            s[2 * i] = (c & 1) ? '1' : '0';
            s[2 * i + 1] = (c & 2) ? '1' : '0';
        }
        return s;
    }

    static RegisterState from_string(std::string_view text) {
        if (text.size() % 2 != 0) {
            throw std::invalid_argument("state string must have two bits per pair");
        }
        RegisterState st(static_cast<uint32_t>(text.size() / 2));
        for (uint32_t i = 0; i < st.size(); ++i) {
            const char cx = text[2 * i];
            const char cz = text[2 * i + 1];
            if ((cx != '0' && cx != '1') || (cz != '0' && cz != '1')) {
                throw std::invalid_argument("state string must be 0/1 only");
            }
            st.set_pair(i, static_cast<uint8_t>((cx == '1' ? 1 : 0) | (cz == '1' ? 2 : 0)));
        }
        return st;
    }

    bool operator==(const RegisterState&) const = default;

    const std::vector<uint64_t>& words() const { return words_; }

  private:
    uint32_t n_pairs_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace bellperm
