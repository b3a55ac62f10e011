#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmap/matrix.hpp"

namespace pmap {

/// Validity verdict for a candidate density matrix. `diagnostic` names the
/// first failed check and is empty when `ok`.
struct DensityCheck {
    bool ok = false;
    std::string diagnostic;
};

/// Hermitian, unit trace and positive semidefinite, each within tol.
DensityCheck is_density(const ComplexMatrix& m, double tol);

/// A validated n-qubit density matrix: Hermitian to 1e-12, trace one to
/// 1e-12, smallest eigenvalue >= -1e-10.
class DensityState {
public:
    /// Throws std::invalid_argument when the invariants do not hold.
    explicit DensityState(ComplexMatrix matrix);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return matrix_.dim(); }
    const ComplexMatrix& matrix() const { return matrix_; }

    double purity() const;

private:
    int n_qubits_ = 0;
    ComplexMatrix matrix_;
};

struct BlochVector {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;

    double norm() const;
};

DensityState qubit_from_bloch(const BlochVector& v);

enum class GhzPhase { Plus, Minus };

/// (|0...0> +- |1...1>)/sqrt2 for n >= 2 qubits.
DensityState ghz(int n_qubits, GhzPhase phase = GhzPhase::Plus);

/// cos(theta)|000> + sin(theta)|111>.
DensityState gen_ghz(double theta);

/// (|001> + |010> + |100>)/sqrt3.
DensityState w_state();

/// p |phi+><phi+| + (1 - p) I/4, p in [0, 1].
DensityState werner(double p);

/// x * pure + (1 - x) * I / 2^n, x in [0, 1].
DensityState white_noise_mix(const DensityState& pure, double x);

DensityState maximally_mixed(int n_qubits);

/// Correlation coefficients of the three-qubit bound-entangled family.
struct BoundEntangledCoefficients {
    double r1 = 0.0;  // ZZI, ZIZ, IZZ
    double r2 = 0.0;  // XXX
    double r3 = 0.0;  // XYY, YXY, YYX
};

BoundEntangledCoefficients bound_entangled_coefficients(double p1, double p2, double p3);

/// (1/8)(III + r1 (ZZI + ZIZ + IZZ) + r2 XXX + r3 (XYY + YXY + YYX)).
/// Requires 0 <= p_i <= 1 and p1 + p2 + 3 p3 = 1 (to 1e-12); the result is
/// checked for positivity and rejected with the offending eigenvalue.
DensityState bound_entangled(double p1, double p2, double p3);

/// Same family with p3 = (1 - p1 - p2)/3 eliminated.
DensityState bound_entangled(double p1, double p2);

/// Normalized projector onto the four-qubit G_abcd state.
DensityState g_abcd(Complex a, Complex b, Complex c, Complex d);

/// One subset per bipartition A|complement of n qubits: the smaller side,
/// and for equal sizes the side containing qubit 0. Ordered by size, then
/// lexicographically, giving 2^(n-1) - 1 subsets (for n = 4:
/// {0},{1},{2},{3},{0,1},{0,2},{0,3}).
std::vector<std::vector<int>> bipartition_representatives(int n_qubits);

/// Embeds rho_left (on the sorted qubit subset `left`) tensored with
/// rho_right (on the sorted complement) into global qubit order.
ComplexMatrix embed_bipartite_product(int n_qubits, const std::vector<int>& left, const ComplexMatrix& rho_left,
                                      const ComplexMatrix& rho_right);

struct BiseparableTerm {
    double weight = 0.0;
    std::vector<int> left;   // sorted qubit subset A
    std::vector<int> right;  // sorted complement
    DensityState left_state;
    DensityState right_state;
};

struct BiseparableSample {
    int n_qubits = 0;
    std::vector<BiseparableTerm> terms;
    DensityState realized;
};

/// Convex mixture of n_terms product states, each across a uniformly chosen
/// bipartition with complex-Gaussian random pure factors and simplex-uniform
/// weights. Deterministic for a fixed seed.
BiseparableSample random_biseparable(int n_qubits, int n_terms, std::uint64_t seed);

}  // namespace pmap
