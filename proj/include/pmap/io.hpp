#pragma once

// File formats.
//
// State file:   { "n_qubits": N, "matrix": [[[re, im], ...], ...] }, row-major
//               2^N x 2^N entries.
// Witness file: { "pauli_terms": { "<label>": coefficient, ... } }
// Sweep CSV:    header naming the parameters then "min_eigenvalue", one row
//               per grid point in grid order, numbers with 15 significant digits.

#include <iosfwd>
#include <string>
#include <vector>

#include "pmap/detector.hpp"
#include "pmap/states.hpp"
#include "pmap/witness.hpp"

namespace pmap::io {

/// %.15g.
std::string format_number(double v);

std::string state_to_json(const DensityState& rho);

/// Parses a state document. Throws std::invalid_argument for malformed JSON,
/// wrong shapes, or a matrix that fails is_density(m, tol).
DensityState state_from_json(const std::string& text, double tol = 1e-10);

void write_state_file(const std::string& path, const DensityState& rho);
DensityState read_state_file(const std::string& path, double tol = 1e-10);

std::string witness_to_json(const WitnessOperator& w);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Valid rows only: p1, p2, min_eigenvalue (numeric), then analytic_min,
/// analytic_mismatch, closed_form_mismatch and the three reference-region flags.
void write_bound_sweep_csv(std::ostream& os, const std::vector<BoundEntangledRow>& rows);

}  // namespace pmap::io
