#include "pmap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pmap {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()), data_() {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) {
            throw std::invalid_argument("ComplexMatrix: rows must form a square array");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(const std::vector<Complex>& v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& z : data_) best = std::max(best, std::abs(z));
    return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch in +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch in -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("ComplexMatrix: dimension mismatch in *");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) best = std::max(best, std::abs(a(i, j) - b(i, j)));
    }
    return best;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_product: dimension mismatch");
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
    }
    return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
            }
        }
    }
    return out;
}

HermiticityViolation hermiticity_violation(const ComplexMatrix& m) {
    HermiticityViolation worst;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = i; j < m.dim(); ++j) {
            const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
            if (dev > worst.deviation) worst = {i, j, dev};
        }
    }
    return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return hermiticity_violation(m).deviation <= tol;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (i != j) sum += std::norm(a(i, j));
        }
    }
    return std::sqrt(sum);
}

double frobenius_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) sum += std::norm(a(i, j));
    }
    return std::sqrt(sum);
}

// One complex Jacobi rotation zeroing a(p, q). The rotation is the real
// Jacobi rotation preceded by a phase on column q that makes a(p, q) real:
// G = diag(1, e^{-i phi}) * [[c, s], [-s, c]],  a <- G^H a G.
void rotate(ComplexMatrix& a, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const Complex phase = apq / mag;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const Complex conj_phase = std::conj(phase);

    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - s * conj_phase * akq;
        a(k, q) = s * akp + c * conj_phase * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - s * phase * aqk;
        a(q, k) = s * apk + c * phase * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
    const auto violation = hermiticity_violation(m);
    if (violation.deviation > tol) {
        std::ostringstream msg;
        msg << "hermitian_eigenvalues: matrix is not Hermitian: |m(" << violation.row << "," << violation.col
            << ") - conj(m(" << violation.col << "," << violation.row << "))| = " << violation.deviation
            << " > " << tol;
        throw std::invalid_argument(msg.str());
    }

    ComplexMatrix a = m;
    // Symmetrize so rotations act on an exactly Hermitian matrix.
    for (std::size_t i = 0; i < a.dim(); ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.dim(); ++j) {
            const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }

    const std::size_t n = a.dim();
    const double threshold = 1e-14 * std::max(1.0, frobenius_norm(a));
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) >= threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, p, q);
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double min_eigenvalue(const ComplexMatrix& m, double tol) {
    const auto eig = hermitian_eigenvalues(m, tol);
    if (eig.empty()) throw std::invalid_argument("min_eigenvalue: empty matrix");
    return eig.front();
}

int qubit_count(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    return n;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int qubit, int n_qubits) {
    if (n_qubits < 1 || m.dim() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("partial_transpose: matrix dimension does not match qubit count");
    }
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::invalid_argument("partial_transpose: qubit index " + std::to_string(qubit) + " out of range");
    }
    const std::size_t mask = std::size_t{1} << (n_qubits - 1 - qubit);
    ComplexMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            // Swap the designated bit between row and column index.
            const std::size_t bi = i & mask;
            const std::size_t bj = j & mask;
            const std::size_t ti = (i & ~mask) | bj;
            const std::size_t tj = (j & ~mask) | bi;
            out(ti, tj) = m(i, j);
        }
    }
    return out;
}

std::string to_string(const ComplexMatrix& m, int precision) {
    std::ostringstream os;
    char buf[96];
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const Complex z = m(i, j);
            if (z.imag() == 0.0) {
                std::snprintf(buf, sizeof buf, "%*.*f", precision + 4, precision, z.real() + 0.0);
            } else {
                std::snprintf(buf, sizeof buf, "%.*f%+.*fi", precision, z.real() + 0.0, precision, z.imag());
            }
            os << (j ? "  " : "") << buf;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace pmap
