#pragma once

#include <vector>

#include "pmap/pauli.hpp"
#include "pmap/states.hpp"

namespace pmap {

/// W = Phi_N(|GHZ><GHZ|): nonnegative expectation on every biseparable
/// state, negative on (|0..0> - |1..1>)/sqrt2.
struct WitnessOperator {
    int n_qubits = 0;
    ComplexMatrix matrix;
    PauliExpansion pauli_terms;
};

/// Defaults to the three-qubit witness.
WitnessOperator build_witness(int n_qubits = 3);

/// Tr(W rho). Throws on a dimension mismatch.
double expectation(const WitnessOperator& w, const DensityState& rho);

struct MeasurementSettings {
    /// Non-identity Pauli labels with nonzero coefficient.
    std::vector<PauliLabel> correlations;
    /// Labels containing only I and Z; all of them are read from one Z-basis setting.
    std::vector<PauliLabel> z_type;
    /// The remaining (X/Y-carrying) correlations.
    std::vector<PauliLabel> xy_type;
    /// Local measurement bases, one per setting: qubit-wise compatible
    /// correlations share a setting.
    std::vector<PauliLabel> settings;
    /// 3^N, the number of settings full tomography needs.
    int tomography_settings = 0;
};

MeasurementSettings measurement_settings(const WitnessOperator& w);

}  // namespace pmap
