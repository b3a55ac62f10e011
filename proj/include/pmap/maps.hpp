#pragma once

// Single-qubit linear maps (projection, identity, Lindblad-generated) and
// their action on chosen qubits of an n-qubit operator.

#include <array>
#include <map>
#include <optional>

#include "pmap/matrix.hpp"

namespace pmap {

enum class MapKind { Identity, Projection, Lindblad };

class QubitMapSpec {
public:
    static QubitMapSpec identity();
    /// [[x11, x12], [x21, x22]] -> [[(x11+x22)/2, x12], [x21, (x11+x22)/2]]:
    /// kills the sigma_z Bloch component, keeps sigma_x and sigma_y.
    static QubitMapSpec projection();
    /// X -> X + sum_i gamma_i (sigma_i X sigma_i^H - (sigma_i^H sigma_i X + X sigma_i^H sigma_i)/2).
    static QubitMapSpec lindblad(double gamma1, double gamma2, double gamma3);

    /// Copy with U(.)U^H applied after the map. Throws unless U is a 2x2
    /// unitary to 1e-12.
    QubitMapSpec then_unitary(const ComplexMatrix& u) const;

    MapKind kind() const { return kind_; }
    const std::array<double, 3>& gammas() const { return gammas_; }
    const std::optional<ComplexMatrix>& post_unitary() const { return post_unitary_; }

private:
    QubitMapSpec(MapKind kind, std::array<double, 3> gammas) : kind_(kind), gammas_(gammas) {}

    MapKind kind_;
    std::array<double, 3> gammas_{};
    std::optional<ComplexMatrix> post_unitary_;
};

/// Lindblad-kind spec; gammas (1/4, 1/4, -1/4) reproduce the projection map.
QubitMapSpec lindblad_projection(double gamma1, double gamma2, double gamma3);

/// Applies the map to an arbitrary 2x2 matrix (the maps are linear on all of M_2).
ComplexMatrix apply_qubit_map(const QubitMapSpec& spec, const ComplexMatrix& x);

/// Single-qubit maps placed on qubit slots of an n-qubit register; qubits
/// without an entry are left alone.
struct LiftedTerm {
    int n_qubits = 0;
    std::map<int, QubitMapSpec> assignment;
};

/// Applies every assigned map to its slot by substitution on the 2x2 blocks
/// |a><b| of that qubit. Throws on a dimension mismatch or an index out of range.
ComplexMatrix lift_apply(const LiftedTerm& term, const ComplexMatrix& rho);

/// (I (x) Lambda)(|phi+><phi+|) with |phi+> = (|00> + |11>)/sqrt2.
ComplexMatrix choi_matrix(const QubitMapSpec& spec);

/// Minimum eigenvalue of (I (x) P)|psi><psi| for |psi> = sqrt(nu1)|00> + sqrt(1-nu1)|11>:
/// (1 - sqrt(1 + 12 nu1 (1 - nu1)))/4. Throws unless 0 <= nu1 <= 1.
double eta_min_analytic(double nu1);

}  // namespace pmap
