#pragma once

// Dense complex matrices for multi-qubit operators.
//
// Qubit ordering: qubit 0 is the leftmost (most significant) tensor factor,
// so for an n-qubit register qubit q owns bit (n - 1 - q) of a basis index.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace pmap {

using Complex = std::complex<double>;

/// Absolute tolerance used for every Hermiticity check unless a caller
/// passes its own.
inline constexpr double kHermitianTol = 1e-12;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(const std::vector<double>& diag);
    /// |v><v| for an (unnormalized) amplitude vector.
    static ComplexMatrix outer(const std::vector<Complex>& v);

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    /// Largest |m_ij| over all entries.
    double max_abs() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// max_ij |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(a * b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermiticityViolation {
    std::size_t row = 0;
    std::size_t col = 0;
    double deviation = 0.0;
};

/// Worst |m_ij - conj(m_ji)| and where it happens.
HermiticityViolation hermiticity_violation(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Ascending eigenvalues of a Hermitian matrix via cyclic Jacobi rotations.
/// Throws std::invalid_argument naming the offending entry pair when m is
/// not Hermitian within tol.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = kHermitianTol);

double min_eigenvalue(const ComplexMatrix& m, double tol = kHermitianTol);

/// Transposes the row/column indices of one qubit slot of an n-qubit operator.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int qubit, int n_qubits);

/// Number of qubits n with 2^n == dim; throws if dim is not a power of two.
int qubit_count(std::size_t dim);

std::string to_string(const ComplexMatrix& m, int precision = 6);

}  // namespace pmap
