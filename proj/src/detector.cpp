#include "pmap/detector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace pmap {

double kappa_for(int n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("kappa_for: need at least 2 qubits");
    return (std::ldexp(1.0, n_qubits - 1) - 2.0) / 4.0;
}

PhiSpec phi_spec(int n_qubits, const std::optional<ComplexMatrix>& post_unitary) {
    if (n_qubits < 2) {
        throw std::invalid_argument("phi_spec: need at least 2 qubits, got " + std::to_string(n_qubits));
    }
    QubitMapSpec map = QubitMapSpec::projection();
    if (post_unitary) map = map.then_unitary(*post_unitary);

    PhiSpec spec{n_qubits, {}, kappa_for(n_qubits)};
    for (const auto& subset : bipartition_representatives(n_qubits)) {
        LiftedTerm term{n_qubits, {}};
        for (int q : subset) term.assignment.emplace(q, map);
        spec.terms.push_back(std::move(term));
    }
    return spec;
}

PhiSpec bipartite_spec(const std::optional<ComplexMatrix>& post_unitary) {
    QubitMapSpec map = QubitMapSpec::projection();
    if (post_unitary) map = map.then_unitary(*post_unitary);
    return PhiSpec{2, {LiftedTerm{2, {{1, map}}}}, 0.0};
}

ComplexMatrix apply_phi(const PhiSpec& spec, const ComplexMatrix& rho) {
    const std::size_t dim = std::size_t{1} << spec.n_qubits;
    if (rho.dim() != dim) {
        throw std::invalid_argument("apply_phi: operator dimension " + std::to_string(rho.dim()) +
                                    " does not match a " + std::to_string(spec.n_qubits) + "-qubit detector");
    }
    ComplexMatrix out = spec.kappa * rho.trace() * ComplexMatrix::identity(dim);
    for (const auto& term : spec.terms) out += lift_apply(term, rho);
    return out;
}

ComplexMatrix apply_phi(const PhiSpec& spec, const DensityState& rho) { return apply_phi(spec, rho.matrix()); }

DetectionReport detect_with(const PhiSpec& spec, const DensityState& rho, double tol) {
    DetectionReport report;
    report.spectrum = hermitian_eigenvalues(apply_phi(spec, rho));
    report.min_eigenvalue = report.spectrum.front();
    report.tolerance = tol;
    report.detected = report.min_eigenvalue < -tol;
    return report;
}

DetectionReport detect(const DensityState& rho, const std::optional<ComplexMatrix>& post_unitary, double tol) {
    return detect_with(phi_spec(rho.n_qubits(), post_unitary), rho, tol);
}

double noise_threshold_with(const PhiSpec& spec, const DensityState& pure, double tol) {
    const auto f = [&](double x) { return min_eigenvalue(apply_phi(spec, white_noise_mix(pure, x))); };

    if (const double at_one = f(1.0); !(at_one < -kDetectionTol)) {
        throw std::invalid_argument("noise_threshold: state is not detected at x = 1 (min eigenvalue " +
                                    std::to_string(at_one) + "), no threshold in [0, 1]");
    }

    constexpr int kScan = 100;
    const auto scan = parallel_map(kScan + 1, [&](std::size_t k) { return f(static_cast<double>(k) / kScan); });
    int changes = 0;
    int bracket = -1;
    for (int k = 0; k < kScan; ++k) {
        if ((scan[k] >= 0.0) != (scan[k + 1] >= 0.0)) {
            ++changes;
            bracket = k;
        }
    }
    if (changes != 1 || scan.front() < 0.0) {
        throw std::invalid_argument("noise_threshold: min eigenvalue changes sign " + std::to_string(changes) +
                                    " times on the 101-point scan of [0, 1]; bisection needs exactly one crossing");
    }

    double lo = static_cast<double>(bracket) / kScan;
    double hi = static_cast<double>(bracket + 1) / kScan;
    const double width = std::max(tol, 1e-15);
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double noise_threshold(const DensityState& pure, const std::optional<ComplexMatrix>& post_unitary, double tol) {
    return noise_threshold_with(phi_spec(pure.n_qubits(), post_unitary), pure, tol);
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
    if (steps < 1) throw std::invalid_argument("linear_grid: need at least one step");
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) grid[k] = lo + (hi - lo) * static_cast<double>(k) / steps;
    return grid;
}

namespace {

double gen_ghz_min_eigenvalue(const PhiSpec& spec, double theta) {
    return min_eigenvalue(apply_phi(spec, gen_ghz(theta)));
}

}  // namespace

std::vector<SweepRow> sweep_gen_ghz(const std::vector<double>& theta_grid) {
    if (theta_grid.empty()) throw std::invalid_argument("sweep_gen_ghz: empty grid");
    const PhiSpec spec = phi_spec(3);
    return parallel_map(theta_grid.size(), [&](std::size_t i) {
        return SweepRow{{{"theta", theta_grid[i]}}, gen_ghz_min_eigenvalue(spec, theta_grid[i])};
    });
}

std::vector<double> gen_ghz_crossings(const std::vector<SweepRow>& rows) {
    const PhiSpec spec = phi_spec(3);
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const bool a = rows[i].min_eigenvalue >= 0.0;
        const bool b = rows[i + 1].min_eigenvalue >= 0.0;
        if (a == b) continue;
        double lo = rows[i].parameters.front().second;
        double hi = rows[i + 1].parameters.front().second;
        while (std::abs(hi - lo) > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            ((gen_ghz_min_eigenvalue(spec, mid) >= 0.0) == a ? lo : hi) = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

namespace {

void require_simplex(double p1, double p2, const char* who) {
    if (!(p1 >= 0.0 && p2 >= 0.0 && p1 + p2 <= 1.0 + 1e-12)) {
        throw std::invalid_argument(std::string(who) + ": (p1, p2) = (" + std::to_string(p1) + ", " +
                                    std::to_string(p2) + ") outside 0 <= p1, p2 and p1 + p2 <= 1");
    }
}

}  // namespace

std::array<double, 8> bound_entangled_eigs_analytic(double p1, double p2) {
    require_simplex(p1, p2, "bound_entangled_eigs_analytic");
    const double l1 = 0.75 * (-1.0 + 2.0 * p1 + 2.0 * p2);
    const double l4 = 0.25 * (3.0 + 22.0 * p1 - 18.0 * p2);
    const double l5 = 0.25 * (3.0 - 18.0 * p1 + 22.0 * p2);
    const double l6 = (31.0 - 22.0 * p1 - 22.0 * p2) / 12.0;
    return {l1, l1, l1, l4, l5, l6, l6, l6};
}

std::array<double, 8> bound_entangled_eigs_closed_form(double p1, double p2) {
    require_simplex(p1, p2, "bound_entangled_eigs_closed_form");
    const double s = p1 + p2;
    const double low = (5.0 + 4.0 * s) / 12.0;
    const double high = (17.0 - 8.0 * s) / 12.0;
    return {low, low, low, 0.75 + 2.0 * p1 - p2, 0.75 - p1 + 2.0 * p2, high, high, high};
}

std::array<bool, 3> bound_entangled_reference_regions(double p1, double p2) {
    // Strict and non-strict comparisons get a 1e-12 allowance so grid
    // rounding does not move points across a boundary.
    constexpr double eps = 1e-12;
    const auto lt = [](double a, double b) { return a < b - eps; };
    const auto le = [](double a, double b) { return a <= b + eps; };
    const bool fig1 = le(0.0, p1) && lt(p1, 0.5) && le(0.0, p2) && lt(p2, 0.5 * (1.0 - 2.0 * p1));
    const bool fig2 = le(0.0, p1) && lt(p1, 3.0 / 8.0) && le((3.0 + 22.0 * p1) / 18.0, p2) && lt(p2, 1.0 - p1);
    const bool fig3 = lt(1.0 / 6.0, p1) && le(p1, 5.0 / 8.0) && le(0.0, p2) && lt(p2, (-3.0 + 18.0 * p1) / 22.0);
    return {fig1, fig2, fig3};
}

namespace {

double sorted_gap(std::array<double, 8> expected, const std::vector<double>& numeric) {
    std::sort(expected.begin(), expected.end());
    double gap = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) gap = std::max(gap, std::abs(expected[i] - numeric[i]));
    return gap;
}

}  // namespace

std::vector<BoundEntangledRow> sweep_bound_entangled(const std::vector<double>& p1_grid,
                                                      const std::vector<double>& p2_grid) {
    if (p1_grid.empty() || p2_grid.empty()) throw std::invalid_argument("sweep_bound_entangled: empty grid");
    const PhiSpec spec = phi_spec(3);
    return parallel_map(p1_grid.size() * p2_grid.size(), [&](std::size_t idx) {
        BoundEntangledRow row;
        row.p1 = p1_grid[idx / p2_grid.size()];
        row.p2 = p2_grid[idx % p2_grid.size()];
        if (!(row.p1 >= 0.0 && row.p2 >= 0.0 && row.p1 <= 1.0 && row.p2 <= 1.0 && row.p1 + row.p2 <= 1.0 + 1e-12)) {
            row.skip_reason = "outside simplex";
            return row;
        }
        try {
            const DensityState rho = bound_entangled(row.p1, row.p2);
            row.numeric = hermitian_eigenvalues(apply_phi(spec, rho));
        } catch (const std::invalid_argument& e) {
            row.skip_reason = e.what();
            return row;
        }
        row.valid = true;
        row.analytic = bound_entangled_eigs_analytic(row.p1, row.p2);
        row.closed_form = bound_entangled_eigs_closed_form(row.p1, row.p2);
        row.analytic_min = *std::min_element(row.analytic.begin(), row.analytic.end());
        row.numeric_min = row.numeric.front();
        row.analytic_mismatch = sorted_gap(row.analytic, row.numeric);
        row.closed_form_mismatch = sorted_gap(row.closed_form, row.numeric);
        row.in_reference_region = bound_entangled_reference_regions(row.p1, row.p2);
        return row;
    });
}

std::vector<SweepRow> sweep_g_abcd(const std::vector<double>& a_grid, const std::vector<double>& c_grid, double b) {
    if (a_grid.empty() || c_grid.empty()) throw std::invalid_argument("sweep_g_abcd: empty grid");
    const PhiSpec spec = phi_spec(4);
    struct Slot {
        bool keep = false;
        SweepRow row;
    };
    const auto slots = parallel_map(a_grid.size() * c_grid.size(), [&](std::size_t idx) {
        const double a = a_grid[idx / c_grid.size()];
        const double c = c_grid[idx % c_grid.size()];
        if (a == 0.0 && b == 0.0 && c == 0.0) return Slot{};
        const double lo = min_eigenvalue(apply_phi(spec, g_abcd(a, b, c, a)));
        return Slot{true, SweepRow{{{"a", a}, {"b", b}, {"c", c}, {"d", a}}, lo}};
    });
    std::vector<SweepRow> rows;
    for (const auto& s : slots) {
        if (s.keep) rows.push_back(s.row);
    }
    return rows;
}

}  // namespace pmap
