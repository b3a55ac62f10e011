#include "pmap/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "pmap/detector.hpp"
#include "pmap/io.hpp"
#include "pmap/maps.hpp"
#include "pmap/pauli.hpp"
#include "pmap/states.hpp"
#include "pmap/witness.hpp"

namespace pmap {

namespace {

constexpr double kPositivityTol = 1e-9;
constexpr double kExactTol = 1e-12;

std::string describe(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Seeds for sample i of a suite; suites get disjoint streams.
std::uint64_t sample_seed(std::uint64_t base, std::uint64_t suite, int i) {
    return base * 1000003ULL + suite * 7919ULL * 1000000ULL + static_cast<std::uint64_t>(i);
}

int count_or(const SelftestOptions& o, int fallback) { return o.samples ? *o.samples : fallback; }

SuiteResult biseparable_suite(const std::string& name, int n_qubits, int samples, const SelftestOptions& o,
                              std::uint64_t suite_id, const PhiSpec& spec, bool include_optimality_probe) {
    SuiteResult result{name, 0, 0, std::numeric_limits<double>::infinity(), {}};

    std::vector<DensityState> fixed;
    if (include_optimality_probe) {
        // |phi+> (x) |0>: biseparable across 12|3 and the state that pins kappa_3.
        std::vector<Complex> v(8);
        v[0b000] = v[0b110] = 1.0 / std::sqrt(2.0);
        fixed.emplace_back(ComplexMatrix::outer(v));
    }

    const auto mins = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
        const int n_terms = 1 + static_cast<int>(i % 3);
        const auto sample = random_biseparable(n_qubits, n_terms, sample_seed(o.seed, suite_id, static_cast<int>(i)));
        return min_eigenvalue(apply_phi(spec, sample.realized));
    });

    const auto record = [&](double lo, const auto& make_state) {
        ++result.checked;
        result.worst = std::min(result.worst, lo);
        if (lo >= -kPositivityTol) {
            ++result.passed;
        } else if (result.failure.empty()) {
            result.failure = "min eigenvalue " + describe(lo) + " on state " + io::state_to_json(make_state());
        }
    };
    for (const auto& rho : fixed) {
        record(min_eigenvalue(apply_phi(spec, rho)), [&] { return rho; });
    }
    for (int i = 0; i < samples; ++i) {
        record(mins[i], [&] { return random_biseparable(n_qubits, 1 + i % 3, sample_seed(o.seed, suite_id, i)).realized; });
    }
    return result;
}

ComplexMatrix random_complex_2x2(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const double re = g(rng);
            const double im = g(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

DensityState random_mixed(int n_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const std::size_t dim = std::size_t{1} << n_qubits;
    ComplexMatrix a(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = g(rng);
            const double im = g(rng);
            a(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix rho = a * a.adjoint();
    rho *= 1.0 / rho.trace().real();
    // Exact Hermitian symmetry for the DensityState invariant.
    return DensityState(0.5 * (rho + rho.adjoint()));
}

SuiteResult projection_positivity(const SelftestOptions& o) {
    SuiteResult r{"projection-positivity", 0, 0, std::numeric_limits<double>::infinity(), {}};
    std::mt19937_64 rng(sample_seed(o.seed, 10, 0));
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = count_or(o, 1000);
    const auto map = QubitMapSpec::projection();
    for (int i = 0; i < n; ++i) {
        double x = g(rng), y = g(rng), z = g(rng);
        const double len = std::sqrt(x * x + y * y + z * z);
        // Every fourth vector sits on the Bloch sphere surface.
        const double radius = (i % 4 == 0) ? 1.0 : std::cbrt(u(rng));
        const BlochVector v{radius * x / len, radius * y / len, radius * z / len};
        const double lo = min_eigenvalue(apply_qubit_map(map, qubit_from_bloch(v).matrix()));
        ++r.checked;
        r.worst = std::min(r.worst, lo);
        if (lo >= -kExactTol) {
            ++r.passed;
        } else if (r.failure.empty()) {
            r.failure = "Bloch vector (" + describe(v.p1) + ", " + describe(v.p2) + ", " + describe(v.p3) +
                        ") maps to min eigenvalue " + describe(lo);
        }
    }
    return r;
}

SuiteResult choi_negativity() {
    SuiteResult r{"choi-negativity", 1, 0, 0.0, {}};
    r.worst = min_eigenvalue(choi_matrix(QubitMapSpec::projection()));
    if (r.worst <= -0.25 + kExactTol) {
        r.passed = 1;
    } else {
        r.failure = "Choi matrix of the projection map has min eigenvalue " + describe(r.worst);
    }
    return r;
}

SuiteResult lindblad_equivalence(const SelftestOptions& o) {
    SuiteResult r{"lindblad-equivalence", 0, 0, 0.0, {}};
    std::mt19937_64 rng(sample_seed(o.seed, 11, 0));
    const auto lind = lindblad_projection(0.25, 0.25, -0.25);
    const auto proj = QubitMapSpec::projection();
    const int n = count_or(o, 100);
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix x = random_complex_2x2(rng);
        const double diff = max_abs_diff(apply_qubit_map(lind, x), apply_qubit_map(proj, x));
        ++r.checked;
        r.worst = std::max(r.worst, diff);
        if (diff <= kExactTol) {
            ++r.passed;
        } else if (r.failure.empty()) {
            r.failure = "input\n" + to_string(x, 17) + "differs by " + describe(diff);
        }
    }
    return r;
}

SuiteResult eta_min_grid() {
    SuiteResult r{"eta-min-grid", 0, 0, 0.0, {}};
    const LiftedTerm term{2, {{1, QubitMapSpec::projection()}}};
    double global_min = std::numeric_limits<double>::infinity();
    int argmin = -1;
    for (int k = 0; k <= 100; ++k) {
        const double nu1 = k / 100.0;
        std::vector<Complex> psi(4);
        psi[0] = std::sqrt(nu1);
        psi[3] = std::sqrt(1.0 - nu1);
        const double numeric = min_eigenvalue(lift_apply(term, ComplexMatrix::outer(psi)));
        const double analytic = eta_min_analytic(nu1);
        const double diff = std::abs(numeric - analytic);
        ++r.checked;
        r.worst = std::max(r.worst, diff);
        if (diff <= 1e-9) {
            ++r.passed;
        } else if (r.failure.empty()) {
            r.failure = "nu1 = " + describe(nu1) + ": numeric " + describe(numeric) + " vs formula " + describe(analytic);
        }
        if (numeric < global_min) {
            global_min = numeric;
            argmin = k;
        }
    }
    ++r.checked;
    if (argmin == 50 && std::abs(global_min + 0.25) <= 1e-9) {
        ++r.passed;
    } else if (r.failure.empty()) {
        r.failure = "grid minimum " + describe(global_min) + " at nu1 = " + describe(argmin / 100.0) +
                    ", expected -1/4 at nu1 = 1/2";
    }
    return r;
}

SuiteResult witness_adjointness(const SelftestOptions& o) {
    SuiteResult r{"witness-adjointness", 0, 0, 0.0, {}};
    std::mt19937_64 rng(sample_seed(o.seed, 12, 0));
    const PhiSpec spec = phi_spec(3);
    const DensityState g = ghz(3);
    const ComplexMatrix w = apply_phi(spec, g);
    const int n = count_or(o, 100);
    for (int i = 0; i < n; ++i) {
        const DensityState rho = random_mixed(3, rng);
        const double lhs = trace_product(w, rho.matrix()).real();
        const double rhs = trace_product(apply_phi(spec, rho), g.matrix()).real();
        const double diff = std::abs(lhs - rhs);
        ++r.checked;
        r.worst = std::max(r.worst, diff);
        if (diff <= kExactTol) {
            ++r.passed;
        } else if (r.failure.empty()) {
            r.failure = "Tr[W rho] - Tr[Phi(rho) GHZ] = " + describe(lhs - rhs) + " on state " + io::state_to_json(rho);
        }
    }
    return r;
}

SuiteResult witness_positivity(const SelftestOptions& o) {
    SuiteResult r{"witness-biseparable", 0, 0, std::numeric_limits<double>::infinity(), {}};
    const WitnessOperator w = build_witness(3);
    const int n = count_or(o, 1000);
    const auto values = parallel_map(static_cast<std::size_t>(n), [&](std::size_t i) {
        return expectation(w, random_biseparable(3, 1 + static_cast<int>(i % 3), sample_seed(o.seed, 13, static_cast<int>(i))).realized);
    });
    for (int i = 0; i < n; ++i) {
        ++r.checked;
        r.worst = std::min(r.worst, values[i]);
        if (values[i] >= -kPositivityTol) {
            ++r.passed;
        } else if (r.failure.empty()) {
            r.failure = "Tr[W rho] = " + describe(values[i]) + " on state " +
                        io::state_to_json(random_biseparable(3, 1 + i % 3, sample_seed(o.seed, 13, i)).realized);
        }
    }
    return r;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& o) {
    std::vector<SuiteResult> out;

    PhiSpec phi3 = phi_spec(3);
    if (o.kappa3_override) phi3.kappa = *o.kappa3_override;
    out.push_back(biseparable_suite("biseparable-n3", 3, count_or(o, 1000), o, 1, phi3, true));

    PhiSpec phi3x = phi_spec(3, pauli::X());
    if (o.kappa3_override) phi3x.kappa = *o.kappa3_override;
    out.push_back(biseparable_suite("biseparable-n3-unitary-x", 3, count_or(o, 1000), o, 2, phi3x, true));

    out.push_back(biseparable_suite("biseparable-n4", 4, count_or(o, 300), o, 3, phi_spec(4), false));
    out.push_back(biseparable_suite("biseparable-n5", 5, count_or(o, 100), o, 4, phi_spec(5), false));
    out.push_back(projection_positivity(o));
    out.push_back(choi_negativity());
    out.push_back(lindblad_equivalence(o));
    out.push_back(eta_min_grid());
    out.push_back(witness_adjointness(o));
    out.push_back(witness_positivity(o));
    return out;
}

}  // namespace pmap
