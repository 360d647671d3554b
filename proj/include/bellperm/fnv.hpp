#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace bellperm {

// Incremental FNV-1a (64-bit). Used to fingerprint derived gate tables and
// circuit files so a simulation result can be tied to the exact tables and
// circuit bytes that produced it.
class Fnv1a64 {
public:
    Fnv1a64& update(const void* data, size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < len; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ull;
        }
        return *this;
    }

    Fnv1a64& update_u8(uint8_t v) { return update(&v, 1); }

    Fnv1a64& update_u16(uint16_t v) {
        const uint8_t b[2] = {static_cast<uint8_t>(v & 0xff), static_cast<uint8_t>(v >> 8)};
        return update(b, 2);
    }

    Fnv1a64& update_u64(uint64_t v) {
        uint8_t b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<uint8_t>(v >> (8 * i));
        return update(b, 8);
    }

    uint64_t digest() const { return state_; }

private:
    uint64_t state_ = 0xcbf29ce484222325ull;
};

std::string hash_to_hex(uint64_t h);
uint64_t hash_from_hex(const std::string& s);

}  // namespace bellperm
