#include "pmap/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pmap/pauli.hpp"

namespace pmap {

namespace {

constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_unit_interval(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " = " + fmt(v) + " is outside [0, 1]");
    }
}

DensityState pure_state(const std::vector<Complex>& amplitudes) {
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (norm2 == 0.0) throw std::invalid_argument("pure_state: zero amplitude vector");
    const double scale = 1.0 / std::sqrt(norm2);
    std::vector<Complex> v(amplitudes);
    for (auto& a : v) a *= scale;
    return DensityState(ComplexMatrix::outer(v));
}

}  // namespace

DensityCheck is_density(const ComplexMatrix& m, double tol) {
    if (m.dim() == 0) return {false, "empty matrix"};
    const auto violation = hermiticity_violation(m);
    if (violation.deviation > tol) {
        return {false, "not Hermitian: deviation " + fmt(violation.deviation) + " at (" +
                           std::to_string(violation.row) + "," + std::to_string(violation.col) + ")"};
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol) return {false, "trace is " + fmt(tr) + ", expected 1"};
    const double lo = min_eigenvalue(m, tol);
    if (lo < -tol) return {false, "negative eigenvalue " + fmt(lo)};
    return {true, {}};
}

DensityState::DensityState(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    n_qubits_ = qubit_count(matrix_.dim());
    const auto violation = hermiticity_violation(matrix_);
    if (violation.deviation > kHermitianTol) {
        throw std::invalid_argument("DensityState: not Hermitian (deviation " + fmt(violation.deviation) + ")");
    }
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) throw std::invalid_argument("DensityState: trace " + fmt(tr) + " != 1");
    const double lo = min_eigenvalue(matrix_);
    if (lo < -kPsdTol) throw std::invalid_argument("DensityState: negative eigenvalue " + fmt(lo));
}

double DensityState::purity() const { return trace_product(matrix_, matrix_).real(); }

double BlochVector::norm() const { return std::sqrt(p1 * p1 + p2 * p2 + p3 * p3); }

DensityState qubit_from_bloch(const BlochVector& v) {
    if (v.norm() > 1.0 + 1e-12) throw std::invalid_argument("qubit_from_bloch: |p| = " + fmt(v.norm()) + " > 1");
    ComplexMatrix m = pauli::I() + v.p1 * pauli::X() + v.p2 * pauli::Y() + v.p3 * pauli::Z();
    return DensityState(0.5 * m);
}

DensityState ghz(int n_qubits, GhzPhase phase) {
    if (n_qubits < 2) throw std::invalid_argument("ghz: need at least 2 qubits, got " + std::to_string(n_qubits));
    std::vector<Complex> v(std::size_t{1} << n_qubits);
    v.front() = 1.0;
    v.back() = phase == GhzPhase::Plus ? 1.0 : -1.0;
    return pure_state(v);
}

DensityState gen_ghz(double theta) {
    std::vector<Complex> v(8);
    v[0] = std::cos(theta);
    v[7] = std::sin(theta);
    return pure_state(v);
}

DensityState w_state() {
    std::vector<Complex> v(8);
    v[1] = v[2] = v[4] = 1.0;
    return pure_state(v);
}

DensityState werner(double p) {
    require_unit_interval(p, "werner: p");
    std::vector<Complex> phi(4);
    phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
    return DensityState(p * ComplexMatrix::outer(phi) + ((1.0 - p) / 4.0) * ComplexMatrix::identity(4));
}

DensityState white_noise_mix(const DensityState& pure, double x) {
    require_unit_interval(x, "white_noise_mix: x");
    const double d = static_cast<double>(pure.dim());
    return DensityState(x * pure.matrix() + ((1.0 - x) / d) * ComplexMatrix::identity(pure.dim()));
}

DensityState maximally_mixed(int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    return DensityState((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
}

BoundEntangledCoefficients bound_entangled_coefficients(double p1, double p2, double p3) {
    return {p1 + p2 - p3, p1 - p2 + 3.0 * p3, -p1 + p2 + p3};
}

DensityState bound_entangled(double p1, double p2, double p3) {
    require_unit_interval(p1, "bound_entangled: p1");
    require_unit_interval(p2, "bound_entangled: p2");
    require_unit_interval(p3, "bound_entangled: p3");
    const double constraint = p1 + p2 + 3.0 * p3;
    if (std::abs(constraint - 1.0) > 1e-12) {
        throw std::invalid_argument("bound_entangled: p1 + p2 + 3 p3 = " + fmt(constraint) + ", expected 1");
    }
    const auto [r1, r2, r3] = bound_entangled_coefficients(p1, p2, p3);
    const auto op = [](const char* s) { return pauli_operator(PauliLabel(s)); };
    ComplexMatrix m = op("III");
    m += r1 * (op("ZZI") + op("ZIZ") + op("IZZ"));
    m += r2 * op("XXX");
    m += r3 * (op("XYY") + op("YXY") + op("YYX"));
    m *= 0.125;

    const double lo = min_eigenvalue(m);
    if (lo < -kPsdTol) {
        throw std::invalid_argument("bound_entangled: (p1, p2, p3) = (" + fmt(p1) + ", " + fmt(p2) + ", " + fmt(p3) +
                                    ") gives negative eigenvalue " + fmt(lo));
    }
    return DensityState(std::move(m));
}

DensityState bound_entangled(double p1, double p2) {
    double p3 = (1.0 - p1 - p2) / 3.0;
    // Rounding of a grid value just past the simplex edge.
    if (p3 < 0.0 && p3 > -1e-15) p3 = 0.0;
    return bound_entangled(p1, p2, p3);
}

DensityState g_abcd(Complex a, Complex b, Complex c, Complex d) {
    if (a == Complex{} && b == Complex{} && c == Complex{} && d == Complex{}) {
        throw std::invalid_argument("g_abcd: all parameters are zero");
    }
    std::vector<Complex> v(16);
    v[0b0000] = v[0b1111] = (a + d) / 2.0;
    v[0b0011] = (a - d) / 2.0;
    v[0b1100] = -(a - d) / 2.0;
    v[0b0101] = v[0b1010] = (b + c) / 2.0;
    v[0b0110] = v[0b1001] = (b - c) / 2.0;
    return pure_state(v);
}

std::vector<std::vector<int>> bipartition_representatives(int n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("bipartitions need at least 2 qubits");
    std::vector<std::vector<int>> out;
    for (int size = 1; 2 * size <= n_qubits; ++size) {
        // Lexicographic combinations of `size` qubits.
        std::vector<int> pick(size);
        for (int i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            if (2 * size < n_qubits || pick.front() == 0) out.push_back(pick);
            int i = size - 1;
            while (i >= 0 && pick[i] == n_qubits - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

ComplexMatrix embed_bipartite_product(int n_qubits, const std::vector<int>& left, const ComplexMatrix& rho_left,
                                      const ComplexMatrix& rho_right) {
    std::vector<int> order(left);
    for (int q = 0; q < n_qubits; ++q) {
        if (std::find(left.begin(), left.end(), q) == left.end()) order.push_back(q);
    }
    if (static_cast<int>(order.size()) != n_qubits || rho_left.dim() != (std::size_t{1} << left.size()) ||
        rho_right.dim() != (std::size_t{1} << (n_qubits - static_cast<int>(left.size())))) {
        throw std::invalid_argument("embed_bipartite_product: factor dimensions do not match the bipartition");
    }
    const ComplexMatrix local = kron(rho_left, rho_right);
    const std::size_t dim = local.dim();

    // Local position k holds global qubit order[k].
    std::vector<std::size_t> to_local(dim);
    for (std::size_t g = 0; g < dim; ++g) {
        std::size_t l = 0;
        for (int k = 0; k < n_qubits; ++k) {
            const std::size_t bit = (g >> (n_qubits - 1 - order[k])) & 1U;
            l |= bit << (n_qubits - 1 - k);
        }
        to_local[g] = l;
    }
    ComplexMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) out(i, j) = local(to_local[i], to_local[j]);
    }
    return out;
}

namespace {

DensityState random_pure(int n_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> v(std::size_t{1} << n_qubits);
    for (auto& a : v) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = Complex(re, im);
    }
    return pure_state(v);
}

}  // namespace

BiseparableSample random_biseparable(int n_qubits, int n_terms, std::uint64_t seed) {
    if (n_qubits < 2) throw std::invalid_argument("random_biseparable: need at least 2 qubits");
    if (n_terms < 1) throw std::invalid_argument("random_biseparable: need at least 1 term");

    std::mt19937_64 rng(seed);
    const auto cuts = bipartition_representatives(n_qubits);
    std::uniform_int_distribution<std::size_t> pick_cut(0, cuts.size() - 1);
    std::exponential_distribution<double> expo(1.0);

    std::vector<double> weights(static_cast<std::size_t>(n_terms));
    for (auto& w : weights) w = expo(rng);
    double total = 0.0;
    for (double w : weights) total += w;
    for (auto& w : weights) w /= total;

    std::vector<BiseparableTerm> terms;
    terms.reserve(weights.size());
    const std::size_t dim = std::size_t{1} << n_qubits;
    ComplexMatrix realized(dim);
    for (double w : weights) {
        std::vector<int> left = cuts[pick_cut(rng)];
        std::vector<int> right;
        for (int q = 0; q < n_qubits; ++q) {
            if (std::find(left.begin(), left.end(), q) == left.end()) right.push_back(q);
        }
        DensityState a = random_pure(static_cast<int>(left.size()), rng);
        DensityState b = random_pure(static_cast<int>(right.size()), rng);
        realized += w * embed_bipartite_product(n_qubits, left, a.matrix(), b.matrix());
        terms.push_back({w, std::move(left), std::move(right), std::move(a), std::move(b)});
    }
    return {n_qubits, std::move(terms), DensityState(std::move(realized))};
}

}  // namespace pmap
