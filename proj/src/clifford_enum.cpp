#include "bellperm/clifford_enum.hpp"

#include <bit>
#include <stdexcept>

namespace bellperm {

namespace {

constexpr PauliLetter kNontrivial[3] = {kPauliX, kPauliY, kPauliZ};

PauliOperator canonical_plus(uint32_t n, uint32_t x, uint32_t z) {
    PauliOperator p;
    p.n = n;
    p.x = x;
    p.z = z;
    p.phase_exp = static_cast<uint8_t>(std::popcount(x & z) & 3);
    return p;
}

// Symplectic product of two (x|z) vectors for two qubits.
int symp4(uint32_t u, uint32_t v) {
    const uint32_t ux = u & 3, uz = u >> 2;
    const uint32_t vx = v & 3, vz = v >> 2;
    return (std::popcount(ux & vz) ^ std::popcount(uz & vx)) & 1;
}

}  // namespace

const std::vector<CliffordGate>& enumerate_single_qubit_cliffords() {
    static const std::vector<CliffordGate> cached = [] {
        std::vector<CliffordGate> out;
        out.reserve(24);
        for (PauliLetter lx : kNontrivial) {
            for (int sx : {1, -1}) {
                for (PauliLetter lz : kNontrivial) {
                    if (lz == lx) continue;
                    for (int sz : {1, -1}) {
                        PauliOperator ix = PauliOperator::single(1, 0, lx);
                        PauliOperator iz = PauliOperator::single(1, 0, lz);
                        if (sx < 0) ix = -ix;
                        if (sz < 0) iz = -iz;
                        out.push_back(CliffordGate::from_images({ix}, {iz}));
                    }
                }
            }
        }
        return out;
    }();
    return cached;
}

const std::vector<CliffordGate>& enumerate_single_qubit_phaseless() {
    static const std::vector<CliffordGate> cached = [] {
        std::vector<CliffordGate> out;
        out.reserve(6);
        for (PauliLetter lx : kNontrivial) {
            for (PauliLetter lz : kNontrivial) {
                if (lz == lx) continue;
                out.push_back(CliffordGate::from_images({PauliOperator::single(1, 0, lx)},
                                                        {PauliOperator::single(1, 0, lz)}));
            }
        }
        return out;
    }();
    return cached;
}

const std::vector<CliffordGate>& enumerate_two_qubit_phaseless() {
    static const std::vector<CliffordGate> cached = [] {
        std::vector<CliffordGate> out;
        out.reserve(720);
        for (uint32_t x1 = 1; x1 < 16; ++x1) {
            for (uint32_t z1 = 1; z1 < 16; ++z1) {
                if (symp4(x1, z1) != 1) continue;
                for (uint32_t x2 = 1; x2 < 16; ++x2) {
                    if (symp4(x2, x1) != 0 || symp4(x2, z1) != 0) continue;
                    for (uint32_t z2 = 1; z2 < 16; ++z2) {
                        if (symp4(z2, x1) != 0 || symp4(z2, z1) != 0) continue;
                        if (symp4(z2, x2) != 1) continue;
                        out.push_back(CliffordGate::from_images(
                            {canonical_plus(2, x1 & 3, x1 >> 2), canonical_plus(2, x2 & 3, x2 >> 2)},
                            {canonical_plus(2, z1 & 3, z1 >> 2), canonical_plus(2, z2 & 3, z2 >> 2)}));
                    }
                }
            }
        }
        if (out.size() != 720) throw std::logic_error("Sp(4, F2) enumeration did not yield 720 gates");
        return out;
    }();
    return cached;
}

PauliOperator pair_xx(uint32_t pair, uint32_t count) {
    PauliOperator p = PauliOperator::identity(2 * count);
    p.x = (1u << pair) | (1u << (count + pair));
    return p;
}

PauliOperator pair_zz(uint32_t pair, uint32_t count) {
    PauliOperator p = PauliOperator::identity(2 * count);
    p.z = (1u << pair) | (1u << (count + pair));
    return p;
}

StabilizerTableau bell_pair_tableau(const std::vector<uint8_t>& codes) {
    const auto count = static_cast<uint32_t>(codes.size());
    StabilizerTableau t(2 * count);
    for (uint32_t i = 0; i < count; ++i) {
        PauliOperator xx = pair_xx(i, count);
        PauliOperator zz = pair_zz(i, count);
        if ((codes[i] & 1) == 0) xx = -xx;
        if ((codes[i] & 2) == 0) zz = -zz;
        t.add_row(xx);
        t.add_row(zz);
    }
    return t;
}

uint8_t read_pair_code(const StabilizerTableau& t, uint32_t pair, uint32_t count) {
    const auto mx = t.measure(pair_xx(pair, count));
    const auto mz = t.measure(pair_zz(pair, count));
    if (!mx || !mz) throw std::logic_error("pair phases are not deterministic");
    return static_cast<uint8_t>((*mx > 0 ? 1 : 0) | (*mz > 0 ? 2 : 0));
}

CliffordGate hadamard_gate() {
    return CliffordGate::from_images({PauliOperator::from_letters("Z")},
                                     {PauliOperator::from_letters("X")});
}

CliffordGate cnot_gate() {
    return CliffordGate::from_images(
        {PauliOperator::from_letters("XX"), PauliOperator::from_letters("IX")},
        {PauliOperator::from_letters("ZI"), PauliOperator::from_letters("ZZ")});
}

CliffordGate swap_gate() {
    return CliffordGate::from_images(
        {PauliOperator::from_letters("IX"), PauliOperator::from_letters("XI")},
        {PauliOperator::from_letters("IZ"), PauliOperator::from_letters("ZI")});
}

CliffordGate cz_gate() {
    return CliffordGate::from_images(
        {PauliOperator::from_letters("XZ"), PauliOperator::from_letters("ZX")},
        {PauliOperator::from_letters("ZI"), PauliOperator::from_letters("IZ")});
}

CliffordGate bilateral(const CliffordGate& g, uint32_t pair_count) {
    const uint32_t width = g.num_qubits();
    if (width > pair_count) throw std::invalid_argument("gate wider than the pair register");
    std::vector<uint32_t> alice(width), bob(width);
    for (uint32_t i = 0; i < width; ++i) {
        alice[i] = i;
        bob[i] = pair_count + i;
    }
    const CliffordGate a = g.embed(2 * pair_count, alice);
    const CliffordGate b = g.embed(2 * pair_count, bob);
    return a.after(b);
}

}  // namespace bellperm
