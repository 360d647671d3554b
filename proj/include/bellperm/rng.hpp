#pragma once

#include <cstdint>

namespace bellperm {

// splitmix64: used only to expand (seed, counter) pairs into full RNG state,
// so every trajectory / candidate gets its own stream and results do not
// depend on thread count or evaluation order.
inline uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** (Blackman & Vigna, public domain reference implementation).
class Xoshiro256 {
  public:
    Xoshiro256() : Xoshiro256(0, 0) {}

    // Stream construction: state is expanded from (seed, stream) via
    // splitmix64, the authors' recommended seeding procedure.
    Xoshiro256(uint64_t seed, uint64_t stream) {
        uint64_t x = seed ^ (stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
        s_[0] = splitmix64(x);
        s_[1] = splitmix64(x);
        s_[2] = splitmix64(x);
        s_[3] = splitmix64(x);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 bits of mantissa.
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n) by rejection-free multiply-shift (small bias
    // is below 2^-32 for the n used here, all far under 2^20).
    uint32_t below(uint32_t n) {
        return static_cast<uint32_t>((static_cast<uint64_t>(static_cast<uint32_t>(next())) * n) >> 32);
    }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
};

}  // namespace bellperm
