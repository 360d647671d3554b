#pragma once

#include <optional>
#include <vector>

#include "bellperm/pauli.hpp"

namespace bellperm {

// Stabilizer group given by a list of commuting Hermitian generators.
// Deliberately simple and O(n * rows) per operation: this is the reference
// oracle that the fast phase-bit simulator is checked against, not a
// performance path.
class StabilizerTableau {
  public:
    StabilizerTableau() = default;
    explicit StabilizerTableau(uint32_t n_qubits) : n_(n_qubits) {}

    uint32_t num_qubits() const { return n_; }
    const std::vector<PauliOperator>& rows() const { return rows_; }

    void add_row(const PauliOperator& row);

    // Row-reduced echelon form: one pass creating X/Y pivots in qubit order,
    // then one pass creating Z pivots from the remaining pure-Z rows. The
    // result (rows and phases) is unique per stabilizer group, so canonical
    // forms compare equal exactly when the groups are equal.
    void canonicalize();

    bool same_group_as(const StabilizerTableau& other) const;

    // Conjugates every generator: rows r -> g r g^dagger.
    void apply(const class CliffordGate& g);

    // Deterministic measurement: requires p to commute with every row.
    // Returns +1/-1 when +-p is a product of rows, nullopt when p is outside
    // the group (outcome would be uniformly random).
    std::optional<int> measure(const PauliOperator& p) const;

  private:
    uint32_t n_ = 0;
    std::vector<PauliOperator> rows_;
};

// Clifford unitary represented by the images of the single-qubit generators
// under conjugation: image_x[q] = U X_q U^dagger, image_z[q] = U Z_q U^dagger.
class CliffordGate {
  public:
    CliffordGate() = default;

    static CliffordGate identity(uint32_t n);

    // Builds from images; validates Hermiticity and the symplectic relations
    // (image_x[q] anticommutes with image_z[q], commutes with all others).
    static CliffordGate from_images(std::vector<PauliOperator> image_x,
                                    std::vector<PauliOperator> image_z);

    uint32_t num_qubits() const { return n_; }
    const PauliOperator& image_x(uint32_t q) const { return image_x_[q]; }
    const PauliOperator& image_z(uint32_t q) const { return image_z_[q]; }

    PauliOperator conjugate(const PauliOperator& p) const;

    // Composition in circuit order: (*this after first), i.e. the returned
    // gate conjugates by this_gate * first.
    CliffordGate after(const CliffordGate& first) const;

    CliffordGate inverse() const;

    // Embeds this gate on a subset of the qubits of a larger register;
    // target_qubits[i] receives the role of qubit i of this gate.
    CliffordGate embed(uint32_t total_qubits, const std::vector<uint32_t>& target_qubits) const;

    bool satisfies_generator_relations() const;

    // 4n-bit key of the phaseless symplectic action (image bit vectors in
    // generator order), used for deduplication and coset bookkeeping.
    uint64_t phaseless_key() const;

    bool operator==(const CliffordGate&) const = default;

  private:
    uint32_t n_ = 0;
    std::vector<PauliOperator> image_x_;
    std::vector<PauliOperator> image_z_;
};

}  // namespace bellperm
