#pragma once

#include <map>
#include <string>
#include <string_view>

#include "pmap/matrix.hpp"

namespace pmap {

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
}  // namespace pauli

/// Tensor product of single-qubit Paulis, one letter per qubit
/// (leftmost letter acts on qubit 0).
class PauliLabel {
public:
    /// Throws std::invalid_argument for an empty label or a letter outside IXYZ.
    explicit PauliLabel(std::string_view letters);

    const std::string& str() const { return letters_; }
    int n_qubits() const { return static_cast<int>(letters_.size()); }
    char operator[](std::size_t q) const { return letters_[q]; }
    bool is_identity() const;

    auto operator<=>(const PauliLabel&) const = default;

private:
    std::string letters_;
};

using PauliExpansion = std::map<PauliLabel, double>;

ComplexMatrix pauli_operator(const PauliLabel& label);

/// Real coefficients c_s = Tr(m P_s) / 2^n with m = sum_s c_s P_s.
/// Entries with |c_s| < 1e-12 are dropped. Throws for non-Hermitian m or a
/// dimension other than 2^n_qubits.
PauliExpansion pauli_expand(const ComplexMatrix& m, int n_qubits);

/// sum_s c_s P_s.
ComplexMatrix pauli_sum(const PauliExpansion& terms, int n_qubits);

}  // namespace pmap
