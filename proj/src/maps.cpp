#include "pmap/maps.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pmap/pauli.hpp"

namespace pmap {

QubitMapSpec QubitMapSpec::identity() { return {MapKind::Identity, {0.0, 0.0, 0.0}}; }

QubitMapSpec QubitMapSpec::projection() { return {MapKind::Projection, {0.0, 0.0, 0.0}}; }

QubitMapSpec QubitMapSpec::lindblad(double gamma1, double gamma2, double gamma3) {
    return {MapKind::Lindblad, {gamma1, gamma2, gamma3}};
}

QubitMapSpec QubitMapSpec::then_unitary(const ComplexMatrix& u) const {
    if (u.dim() != 2) throw std::invalid_argument("post unitary must be 2x2");
    const double dev = max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(2));
    if (dev > 1e-12) throw std::invalid_argument("post unitary is not unitary (|UU^H - I| = " + std::to_string(dev) + ")");
    QubitMapSpec out = *this;
    out.post_unitary_ = u;
    return out;
}

QubitMapSpec lindblad_projection(double gamma1, double gamma2, double gamma3) {
    return QubitMapSpec::lindblad(gamma1, gamma2, gamma3);
}

ComplexMatrix apply_qubit_map(const QubitMapSpec& spec, const ComplexMatrix& x) {
    if (x.dim() != 2) throw std::invalid_argument("apply_qubit_map: input must be 2x2");
    ComplexMatrix out;
    switch (spec.kind()) {
        case MapKind::Identity:
            out = x;
            break;
        case MapKind::Projection: {
            const Complex mean = 0.5 * (x(0, 0) + x(1, 1));
            out = ComplexMatrix{{mean, x(0, 1)}, {x(1, 0), mean}};
            break;
        }
        case MapKind::Lindblad: {
            out = x;
            const ComplexMatrix sigmas[3] = {pauli::X(), pauli::Y(), pauli::Z()};
            for (int i = 0; i < 3; ++i) {
                const double g = spec.gammas()[i];
                if (g == 0.0) continue;
                const ComplexMatrix& s = sigmas[i];
                const ComplexMatrix sh = s.adjoint();
                const ComplexMatrix shs = sh * s;
                out += g * (s * x * sh - 0.5 * (shs * x + x * shs));
            }
            break;
        }
    }
    if (spec.post_unitary()) {
        const ComplexMatrix& u = *spec.post_unitary();
        out = u * out * u.adjoint();
    }
    return out;
}

ComplexMatrix lift_apply(const LiftedTerm& term, const ComplexMatrix& rho) {
    const int n = term.n_qubits;
    if (n < 1 || rho.dim() != (std::size_t{1} << n)) {
        throw std::invalid_argument("lift_apply: operator dimension " + std::to_string(rho.dim()) +
                                    " does not match 2^" + std::to_string(n));
    }
    ComplexMatrix out = rho;
    for (const auto& [qubit, spec] : term.assignment) {
        if (qubit < 0 || qubit >= n) {
            throw std::invalid_argument("lift_apply: qubit index " + std::to_string(qubit) + " out of range");
        }
        if (spec.kind() == MapKind::Identity && !spec.post_unitary()) continue;
        const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
        // Each pair (i, j) with the target bit cleared indexes one 2x2 block.
        for (std::size_t i = 0; i < out.dim(); ++i) {
            if (i & mask) continue;
            for (std::size_t j = 0; j < out.dim(); ++j) {
                if (j & mask) continue;
                const ComplexMatrix block{{out(i, j), out(i, j | mask)}, {out(i | mask, j), out(i | mask, j | mask)}};
                const ComplexMatrix mapped = apply_qubit_map(spec, block);
                out(i, j) = mapped(0, 0);
                out(i, j | mask) = mapped(0, 1);
                out(i | mask, j) = mapped(1, 0);
                out(i | mask, j | mask) = mapped(1, 1);
            }
        }
    }
    return out;
}

ComplexMatrix choi_matrix(const QubitMapSpec& spec) {
    std::vector<Complex> phi(4);
    phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
    LiftedTerm term{2, {{1, spec}}};
    return lift_apply(term, ComplexMatrix::outer(phi));
}

double eta_min_analytic(double nu1) {
    if (!(nu1 >= 0.0 && nu1 <= 1.0)) throw std::invalid_argument("eta_min_analytic: nu1 outside [0, 1]");
    const double nu2 = 1.0 - nu1;
    return 0.25 * (1.0 - std::sqrt(1.0 + 12.0 * nu1 * nu2));
}

}  // namespace pmap
