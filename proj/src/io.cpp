#include "pmap/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pmap::io {

using nlohmann::json;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v + 0.0);
    return buf;
}

std::string state_to_json(const DensityState& rho) {
    json matrix = json::array();
    const auto& m = rho.matrix();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        matrix.push_back(std::move(row));
    }
    json doc = {{"n_qubits", rho.n_qubits()}, {"matrix", std::move(matrix)}};
    return doc.dump() + "\n";
}

DensityState state_from_json(const std::string& text, double tol) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("state file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("matrix")) {
        throw std::invalid_argument("state file: expected an object with \"n_qubits\" and \"matrix\"");
    }
    if (!doc["n_qubits"].is_number_integer()) throw std::invalid_argument("state file: n_qubits must be an integer");
    const int n = doc["n_qubits"].get<int>();
    if (n < 1 || n > 10) throw std::invalid_argument("state file: n_qubits must be in [1, 10]");
    const std::size_t dim = std::size_t{1} << n;

    const json& rows = doc["matrix"];
    if (!rows.is_array() || rows.size() != dim) {
        throw std::invalid_argument("state file: matrix must have " + std::to_string(dim) + " rows");
    }
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!rows[i].is_array() || rows[i].size() != dim) {
            throw std::invalid_argument("state file: row " + std::to_string(i) + " must have " + std::to_string(dim) +
                                        " entries");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            const json& z = rows[i][j];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw std::invalid_argument("state file: entry (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") must be [re, im]");
            }
            m(i, j) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    const auto check = is_density(m, tol);
    if (!check.ok) throw std::invalid_argument("state file: not a density matrix: " + check.diagnostic);

    // Accepted within tol; snap to the exact invariants DensityState keeps.
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    h *= 1.0 / h.trace().real();
    return DensityState(std::move(h));
}

void write_state_file(const std::string& path, const DensityState& rho) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << state_to_json(rho);
    if (!out) throw std::runtime_error("failed writing " + path);
}

DensityState read_state_file(const std::string& path, double tol) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read state file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return state_from_json(buf.str(), tol);
}

std::string witness_to_json(const WitnessOperator& w) {
    json terms = json::object();
    for (const auto& [label, c] : w.pauli_terms) terms[label.str()] = c;
    json doc = {{"pauli_terms", std::move(terms)}};
    return doc.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    if (rows.empty()) return;
    for (const auto& [name, value] : rows.front().parameters) os << name << ',';
    os << "min_eigenvalue\n";
    for (const auto& row : rows) {
        for (const auto& [name, value] : row.parameters) os << format_number(value) << ',';
        os << format_number(row.min_eigenvalue) << '\n';
    }
}

void write_bound_sweep_csv(std::ostream& os, const std::vector<BoundEntangledRow>& rows) {
    os << "p1,p2,min_eigenvalue,analytic_min,analytic_mismatch,closed_form_mismatch,region_lambda1,region_lambda4,"
          "region_lambda5\n";
    for (const auto& r : rows) {
        if (!r.valid) continue;
        os << format_number(r.p1) << ',' << format_number(r.p2) << ',' << format_number(r.numeric_min) << ','
           << format_number(r.analytic_min) << ',' << format_number(r.analytic_mismatch) << ','
           << format_number(r.closed_form_mismatch) << ',' << r.in_reference_region[0] << ',' << r.in_reference_region[1]
           << ',' << r.in_reference_region[2] << '\n';
    }
}

}  // namespace pmap::io
