#include "pmap/witness.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pmap/detector.hpp"

namespace pmap {

WitnessOperator build_witness(int n_qubits) {
    WitnessOperator w;
    w.n_qubits = n_qubits;
    w.matrix = apply_phi(phi_spec(n_qubits), ghz(n_qubits, GhzPhase::Plus));
    w.pauli_terms = pauli_expand(w.matrix, n_qubits);
    return w;
}

double expectation(const WitnessOperator& w, const DensityState& rho) {
    if (rho.dim() != w.matrix.dim()) {
        throw std::invalid_argument("expectation: state dimension " + std::to_string(rho.dim()) +
                                    " does not match witness dimension " + std::to_string(w.matrix.dim()));
    }
    return trace_product(w.matrix, rho.matrix()).real();
}

namespace {

bool qubitwise_compatible(const std::string& basis, const PauliLabel& label) {
    for (std::size_t q = 0; q < basis.size(); ++q) {
        if (basis[q] != 'I' && label[q] != 'I' && basis[q] != label[q]) return false;
    }
    return true;
}

}  // namespace

MeasurementSettings measurement_settings(const WitnessOperator& w) {
    MeasurementSettings out;
    out.tomography_settings = 1;
    for (int q = 0; q < w.n_qubits; ++q) out.tomography_settings *= 3;

    for (const auto& [label, c] : w.pauli_terms) {
        if (label.is_identity()) continue;
        out.correlations.push_back(label);
        const bool z_only = label.str().find_first_of("XY") == std::string::npos;
        (z_only ? out.z_type : out.xy_type).push_back(label);
    }

    // Greedy grouping, Z-type labels first so they collapse into one basis.
    std::vector<std::string> bases;
    std::vector<PauliLabel> ordered = out.z_type;
    ordered.insert(ordered.end(), out.xy_type.begin(), out.xy_type.end());
    for (const auto& label : ordered) {
        auto it = std::find_if(bases.begin(), bases.end(),
                               [&](const std::string& b) { return qubitwise_compatible(b, label); });
        if (it == bases.end()) {
            bases.push_back(label.str());
            continue;
        }
        for (std::size_t q = 0; q < it->size(); ++q) {
            if ((*it)[q] == 'I') (*it)[q] = label[q];
        }
    }
    for (auto& b : bases) {
        std::replace(b.begin(), b.end(), 'I', 'Z');
        out.settings.emplace_back(b);
    }
    return out;
}

}  // namespace pmap
