#include "pmap/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace pmap {

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::identity(2); }
ComplexMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix Y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

PauliLabel::PauliLabel(std::string_view letters) : letters_(letters) {
    if (letters_.empty()) throw std::invalid_argument("PauliLabel: label must have at least one letter");
    for (char c : letters_) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("PauliLabel: invalid letter '" + std::string(1, c) + "' in \"" +
                                        letters_ + "\"");
        }
    }
}

bool PauliLabel::is_identity() const {
    return letters_.find_first_not_of('I') == std::string::npos;
}

namespace {

ComplexMatrix single(char letter) {
    switch (letter) {
        case 'X': return pauli::X();
        case 'Y': return pauli::Y();
        case 'Z': return pauli::Z();
        default: return pauli::I();
    }
}

// A Pauli string maps basis state |j> to phase(j) |j ^ flip>, so
// Tr(m P) = sum_j m(j, j ^ flip) * phase(j).
Complex trace_with_pauli(const ComplexMatrix& m, const PauliLabel& label) {
    const int n = label.n_qubits();
    std::size_t flip = 0;
    for (int q = 0; q < n; ++q) {
        if (label[q] == 'X' || label[q] == 'Y') flip |= std::size_t{1} << (n - 1 - q);
    }
    Complex total = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        Complex phase = 1.0;
        for (int q = 0; q < n; ++q) {
            const bool bit = (j >> (n - 1 - q)) & 1U;
            switch (label[q]) {
                case 'Y': phase *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0); break;
                case 'Z': if (bit) phase = -phase; break;
                default: break;
            }
        }
        total += m(j, j ^ flip) * phase;
    }
    return total;
}

}  // namespace

ComplexMatrix pauli_operator(const PauliLabel& label) {
    ComplexMatrix out = single(label[0]);
    for (int q = 1; q < label.n_qubits(); ++q) out = kron(out, single(label[q]));
    return out;
}

PauliExpansion pauli_expand(const ComplexMatrix& m, int n_qubits) {
    if (n_qubits < 1 || m.dim() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("pauli_expand: matrix dimension does not match 2^" + std::to_string(n_qubits));
    }
    const auto violation = hermiticity_violation(m);
    if (violation.deviation > kHermitianTol) {
        throw std::invalid_argument("pauli_expand: non-Hermitian input (deviation " +
                                    std::to_string(violation.deviation) + " at (" + std::to_string(violation.row) +
                                    "," + std::to_string(violation.col) + ")), coefficients would be complex");
    }

    static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    PauliExpansion out;
    const std::size_t count = std::size_t{1} << (2 * n_qubits);
    const double norm = static_cast<double>(m.dim());
    std::string letters(static_cast<std::size_t>(n_qubits), 'I');
    for (std::size_t code = 0; code < count; ++code) {
        for (int q = 0; q < n_qubits; ++q) letters[q] = kLetters[(code >> (2 * (n_qubits - 1 - q))) & 3U];
        PauliLabel label(letters);
        const double c = trace_with_pauli(m, label).real() / norm;
        if (std::abs(c) >= 1e-12) out.emplace(std::move(label), c);
    }
    return out;
}

ComplexMatrix pauli_sum(const PauliExpansion& terms, int n_qubits) {
    ComplexMatrix out(std::size_t{1} << n_qubits);
    for (const auto& [label, c] : terms) {
        if (label.n_qubits() != n_qubits) throw std::invalid_argument("pauli_sum: label length mismatch");
        out += c * pauli_operator(label);
    }
    return out;
}

}  // namespace pmap
