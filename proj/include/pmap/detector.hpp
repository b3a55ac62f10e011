#pragma once

// Genuine-multipartite-entanglement detector built from the projection map:
//
//   Phi_N(rho) = sum_A (P_A (x) I_rest)(rho) + kappa_N Tr(rho) I,
//   kappa_N = (2^(N-1) - 2) / 4,
//
// with one term per bipartition A|rest. Phi_N is positive on every
// biseparable state, so a negative output eigenvalue certifies GME.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmap/detail/parallel.hpp"
#include "pmap/maps.hpp"
#include "pmap/states.hpp"

namespace pmap {

inline constexpr double kDetectionTol = 1e-9;

struct PhiSpec {
    int n_qubits = 0;
    std::vector<LiftedTerm> terms;
    double kappa = 0.0;
};

/// (2^(N-1) - 2) / 4.
double kappa_for(int n_qubits);

/// Canonical detector: one term per bipartition representative (see
/// bipartition_representatives), projection on every qubit of the
/// representative, optionally followed by `post_unitary`.
PhiSpec phi_spec(int n_qubits, const std::optional<ComplexMatrix>& post_unitary = std::nullopt);

/// Two-qubit detector I (x) P (projection on the second qubit, kappa 0).
PhiSpec bipartite_spec(const std::optional<ComplexMatrix>& post_unitary = std::nullopt);

ComplexMatrix apply_phi(const PhiSpec& spec, const ComplexMatrix& rho);
ComplexMatrix apply_phi(const PhiSpec& spec, const DensityState& rho);

struct DetectionReport {
    double min_eigenvalue = 0.0;
    std::vector<double> spectrum;  // ascending
    bool detected = false;         // min_eigenvalue < -tolerance
    double tolerance = kDetectionTol;
};

DetectionReport detect_with(const PhiSpec& spec, const DensityState& rho, double tol = kDetectionTol);

/// Uses phi_spec(rho.n_qubits(), post_unitary).
DetectionReport detect(const DensityState& rho, const std::optional<ComplexMatrix>& post_unitary = std::nullopt,
                       double tol = kDetectionTol);

/// Root of x -> min eig Phi(x pure + (1-x) I/2^N) on [0, 1], bracketed by
/// bisection to width tol. A 101-point scan first checks that the sign
/// changes exactly once; throws std::invalid_argument when the pure state
/// is not detected at x = 1 or the scan is not monotone in sign.
double noise_threshold_with(const PhiSpec& spec, const DensityState& pure, double tol = 1e-6);
double noise_threshold(const DensityState& pure, const std::optional<ComplexMatrix>& post_unitary = std::nullopt,
                       double tol = 1e-6);

struct SweepRow {
    std::vector<std::pair<std::string, double>> parameters;
    double min_eigenvalue = 0.0;
};

/// `steps` equal intervals on [lo, hi]; steps + 1 points. Throws for steps < 1.
std::vector<double> linear_grid(double lo, double hi, int steps);

std::vector<SweepRow> sweep_gen_ghz(const std::vector<double>& theta_grid);

/// Zero crossings of theta -> min eig Phi_3(gen_ghz(theta)): sign changes
/// between adjacent rows, refined by bisection to 1e-12.
std::vector<double> gen_ghz_crossings(const std::vector<SweepRow>& rows);

/// Reference closed form lambda_1 .. lambda_8 for Phi_3 on the
/// bound-entangled family, p3 eliminated:
/// 3/4(-1 + 2p1 + 2p2) x3, (3 + 22p1 - 18p2)/4, (3 - 18p1 + 22p2)/4,
/// (31 - 22p1 - 22p2)/12 x3. Throws outside 0 <= p1, p2 and p1 + p2 <= 1.
///
/// NOTE: these do not reproduce the numeric spectrum of apply_phi (they
/// correspond to three-body coefficients 10 r/8 instead of 3 r/8); the
/// sweep reports the gap. bound_entangled_eigs_closed_form is exact.
std::array<double, 8> bound_entangled_eigs_analytic(double p1, double p2);

/// Closed-form spectrum of Phi_3 on the same family derived directly from
/// its Pauli form (7 III + r1 ZZ-terms + 3 r2 XXX + 3 r3 XYY-terms)/8,
/// ascending order not guaranteed: (5 + 4(p1+p2))/12 x3, 3/4 + 2p1 - p2,
/// 3/4 - p1 + 2p2, (17 - 8(p1+p2))/12 x3.
std::array<double, 8> bound_entangled_eigs_closed_form(double p1, double p2);

/// Membership in the three negativity regions given for lambda_1, lambda_4
/// and lambda_5 as explicit inequalities in (p1, p2).
std::array<bool, 3> bound_entangled_reference_regions(double p1, double p2);

struct BoundEntangledRow {
    double p1 = 0.0;
    double p2 = 0.0;
    bool valid = false;  // inside the simplex and PSD
    std::array<double, 8> analytic{};
    std::array<double, 8> closed_form{};
    std::vector<double> numeric;  // ascending spectrum of Phi_3(rho~)
    double analytic_min = 0.0;
    double numeric_min = 0.0;
    /// Largest gap between the sorted analytic and numeric spectra.
    double analytic_mismatch = 0.0;
    double closed_form_mismatch = 0.0;
    std::array<bool, 3> in_reference_region{};
    std::string skip_reason;
};

std::vector<BoundEntangledRow> sweep_bound_entangled(const std::vector<double>& p1_grid,
                                                      const std::vector<double>& p2_grid);

/// Rows over (a, c) with d = a and b fixed; all-zero points are skipped.
std::vector<SweepRow> sweep_g_abcd(const std::vector<double>& a_grid, const std::vector<double>& c_grid,
                                   double b = 0.6);

}  // namespace pmap
