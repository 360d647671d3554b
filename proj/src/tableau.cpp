#include "bellperm/tableau.hpp"

#include <algorithm>
#include <stdexcept>

namespace bellperm {

void StabilizerTableau::add_row(const PauliOperator& row) {
    if (row.n != n_) throw std::invalid_argument("tableau row has wrong qubit count");
    if (!row.is_hermitian()) throw std::invalid_argument("tableau row must be Hermitian");
    for (const auto& r : rows_) {
        if (!row.commutes_with(r)) throw std::invalid_argument("tableau rows must commute");
    }
    rows_.push_back(row);
}

void StabilizerTableau::canonicalize() {
    size_t r = 0;
    auto eliminate = [&](auto bits_of) {
        for (uint32_t q = 0; q < n_ && r < rows_.size(); ++q) {
            size_t pivot = rows_.size();
            for (size_t i = r; i < rows_.size(); ++i) {
                if ((bits_of(rows_[i]) >> q) & 1) {
                    pivot = i;
                    break;
                }
            }
            if (pivot == rows_.size()) continue;
            std::swap(rows_[r], rows_[pivot]);
            for (size_t j = 0; j < rows_.size(); ++j) {
                if (j != r && ((bits_of(rows_[j]) >> q) & 1)) {
                    rows_[j] = rows_[j] * rows_[r];
                }
            }
            ++r;
        }
    };
    // X/Y literals first; what remains below the processed block is pure-Z.
    eliminate([](const PauliOperator& p) { return p.x; });
    eliminate([](const PauliOperator& p) { return p.z; });

    // Redundant generators reduce to identity; a -I row would mean the rows
    // never described a state.
    while (r < rows_.size()) {
        const PauliOperator& leftover = rows_.back();
        if (leftover.x != 0 || leftover.z != 0) {
            throw std::logic_error("canonicalization left a non-identity row unprocessed");
        }
        if (leftover.sign() < 0) throw std::invalid_argument("stabilizer group contains -I");
        rows_.pop_back();
    }
}

bool StabilizerTableau::same_group_as(const StabilizerTableau& other) const {
    if (n_ != other.n_) return false;
    StabilizerTableau a = *this;
    StabilizerTableau b = other;
    a.canonicalize();
    b.canonicalize();
    return a.rows_ == b.rows_;
}

void StabilizerTableau::apply(const CliffordGate& g) {
    if (g.num_qubits() != n_) throw std::invalid_argument("gate width does not match tableau");
    for (auto& row : rows_) row = g.conjugate(row);
}

std::optional<int> StabilizerTableau::measure(const PauliOperator& p) const {
    if (p.n != n_) throw std::invalid_argument("measured Pauli has wrong qubit count");
    for (const auto& row : rows_) {
        if (!p.commutes_with(row)) return std::nullopt;  // outcome would be random
    }
    // Express p as a product of rows via elimination on the (x|z) vectors.
    std::vector<std::pair<uint64_t, PauliOperator>> basis;
    for (const auto& row : rows_) {
        uint64_t v = row.vec();
        PauliOperator op = row;
        for (const auto& [bv, bop] : basis) {
            const uint64_t pivot = bv & ~(bv - 1);
            if (v & pivot) {
                v ^= bv;
                op = op * bop;
            }
        }
        if (v != 0) basis.emplace_back(v, op);
    }
    uint64_t v = p.vec();
    PauliOperator acc = PauliOperator::identity(n_);
    for (const auto& [bv, bop] : basis) {
        const uint64_t pivot = bv & ~(bv - 1);
        if (v & pivot) {
            v ^= bv;
            acc = acc * bop;
        }
    }
    if (v != 0) return std::nullopt;  // commutes but is not in the group
    return acc.phase_exp == p.phase_exp ? 1 : -1;
}

CliffordGate CliffordGate::identity(uint32_t n) {
    std::vector<PauliOperator> ix, iz;
    ix.reserve(n);
    iz.reserve(n);
    for (uint32_t q = 0; q < n; ++q) {
        ix.push_back(PauliOperator::single(n, q, kPauliX));
        iz.push_back(PauliOperator::single(n, q, kPauliZ));
    }
    return from_images(std::move(ix), std::move(iz));
}

CliffordGate CliffordGate::from_images(std::vector<PauliOperator> image_x,
                                       std::vector<PauliOperator> image_z) {
    CliffordGate g;
    g.n_ = static_cast<uint32_t>(image_x.size());
    g.image_x_ = std::move(image_x);
    g.image_z_ = std::move(image_z);
    if (g.image_z_.size() != g.n_) throw std::invalid_argument("image lists differ in length");
    if (!g.satisfies_generator_relations()) {
        throw std::invalid_argument("images do not satisfy the X/Z generator relations");
    }
    return g;
}

bool CliffordGate::satisfies_generator_relations() const {
    for (uint32_t q = 0; q < n_; ++q) {
        if (image_x_[q].n != n_ || image_z_[q].n != n_) return false;
        if (!image_x_[q].is_hermitian() || !image_z_[q].is_hermitian()) return false;
        if (image_x_[q].commutes_with(image_z_[q])) return false;
        for (uint32_t p = q + 1; p < n_; ++p) {
            if (!image_x_[q].commutes_with(image_x_[p])) return false;
            if (!image_x_[q].commutes_with(image_z_[p])) return false;
            if (!image_z_[q].commutes_with(image_x_[p])) return false;
            if (!image_z_[q].commutes_with(image_z_[p])) return false;
        }
    }
    return true;
}

PauliOperator CliffordGate::conjugate(const PauliOperator& p) const {
    assert(p.n == n_);
    PauliOperator acc = PauliOperator::identity(n_);
    acc.phase_exp = p.phase_exp;
    for (uint32_t q = 0; q < n_; ++q) {
        if ((p.x >> q) & 1) acc = acc * image_x_[q];
    }
    for (uint32_t q = 0; q < n_; ++q) {
        if ((p.z >> q) & 1) acc = acc * image_z_[q];
    }
    return acc;
}

CliffordGate CliffordGate::after(const CliffordGate& first) const {
    assert(first.n_ == n_);
    std::vector<PauliOperator> ix, iz;
    ix.reserve(n_);
    iz.reserve(n_);
    for (uint32_t q = 0; q < n_; ++q) {
        ix.push_back(conjugate(first.image_x_[q]));
        iz.push_back(conjugate(first.image_z_[q]));
    }
    return from_images(std::move(ix), std::move(iz));
}

CliffordGate CliffordGate::inverse() const {
    const uint32_t m = 2 * n_;
    // Row i of the symplectic matrix is the (x|z) vector of generator i's
    // image; invert it over F2 with an augmented identity block.
    std::vector<uint64_t> mat(m), inv(m);
    for (uint32_t i = 0; i < n_; ++i) {
        mat[i] = image_x_[i].vec();
        mat[n_ + i] = image_z_[i].vec();
    }
    for (uint32_t i = 0; i < m; ++i) inv[i] = uint64_t{1} << i;
    for (uint32_t col = 0, row = 0; col < m; ++col) {
        uint32_t pivot = m;
        for (uint32_t i = row; i < m; ++i) {
            if ((mat[i] >> col) & 1) {
                pivot = i;
                break;
            }
        }
        if (pivot == m) throw std::logic_error("singular symplectic matrix");
        std::swap(mat[row], mat[pivot]);
        std::swap(inv[row], inv[pivot]);
        for (uint32_t i = 0; i < m; ++i) {
            if (i != row && ((mat[i] >> col) & 1)) {
                mat[i] ^= mat[row];
                inv[i] ^= inv[row];
            }
        }
        ++row;
    }
    // inv now maps target basis vectors to preimage coefficient vectors.
    auto preimage_of = [&](uint32_t basis_index, const PauliOperator& target) {
        const uint64_t coeffs = inv[basis_index];
        PauliOperator p;
        p.n = n_;
        p.x = static_cast<uint32_t>(coeffs & ((uint64_t{1} << n_) - 1));
        p.z = static_cast<uint32_t>(coeffs >> n_);
        p.phase_exp = static_cast<uint8_t>(std::popcount(p.x & p.z) & 3);
        if (conjugate(p).sign() != target.sign()) p = -p;
        return p;
    };
    std::vector<PauliOperator> ix, iz;
    ix.reserve(n_);
    iz.reserve(n_);
    for (uint32_t q = 0; q < n_; ++q) {
        ix.push_back(preimage_of(q, PauliOperator::single(n_, q, kPauliX)));
    }
    for (uint32_t q = 0; q < n_; ++q) {
        iz.push_back(preimage_of(n_ + q, PauliOperator::single(n_, q, kPauliZ)));
    }
    return from_images(std::move(ix), std::move(iz));
}

CliffordGate CliffordGate::embed(uint32_t total_qubits,
                                 const std::vector<uint32_t>& target_qubits) const {
    if (target_qubits.size() != n_) throw std::invalid_argument("target list has wrong length");
    auto embed_op = [&](const PauliOperator& p) {
        PauliOperator out = PauliOperator::identity(total_qubits);
        for (uint32_t i = 0; i < n_; ++i) {
            out.x |= ((p.x >> i) & 1u) << target_qubits[i];
            out.z |= ((p.z >> i) & 1u) << target_qubits[i];
        }
        out.phase_exp = p.phase_exp;
        return out;
    };
    CliffordGate g = identity(total_qubits);
    std::vector<PauliOperator> ix, iz;
    for (uint32_t q = 0; q < total_qubits; ++q) {
        ix.push_back(g.image_x_[q]);
        iz.push_back(g.image_z_[q]);
    }
    for (uint32_t i = 0; i < n_; ++i) {
        ix[target_qubits[i]] = embed_op(image_x_[i]);
        iz[target_qubits[i]] = embed_op(image_z_[i]);
    }
    return from_images(std::move(ix), std::move(iz));
}

uint64_t CliffordGate::phaseless_key() const {
    assert(4 * n_ * n_ <= 64);
    uint64_t key = 0;
    int shift = 0;
    for (uint32_t q = 0; q < n_; ++q) {
        key |= image_x_[q].vec() << shift;
        shift += 2 * n_;
        key |= image_z_[q].vec() << shift;
        shift += 2 * n_;
    }
    return key;
}

}  // namespace bellperm
