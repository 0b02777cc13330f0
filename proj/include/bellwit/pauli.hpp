#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace bellwit {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;
using Operator16 = Eigen::Matrix<Complex, 16, 16>;
using Vector16 = Eigen::Matrix<Complex, 16, 1>;

enum class PauliLabel { I, X, Y, Z };

char pauli_char(PauliLabel label);

// Ordered 4-tuple of single-qubit Pauli labels; qubit A is the leftmost
// tensor factor and the most significant bit of the computational index
// (index k = 8a + 4b + 2c + d).
struct PauliString4 {
  std::array<PauliLabel, 4> labels{PauliLabel::I, PauliLabel::I, PauliLabel::I,
                                   PauliLabel::I};

  std::string str() const;
  bool operator==(const PauliString4&) const = default;
};

// Accepts exactly 4 characters from {I,X,Y,Z}, case-insensitive.
// Throws std::invalid_argument naming the offending position or length.
PauliString4 parse_pauli_string(std::string_view text);

// Exact 2x2 Pauli matrix; entries drawn from {0, +-1, +-i}.
Matrix2 pauli_matrix(PauliLabel label);

// Kronecker product in order A (x) B (x) C (x) D.
Operator16 pauli_string_matrix(const PauliString4& ps);

// Largest entrywise deviation from M = M^dagger.
double hermiticity_defect(const Operator16& m);

// Eigenvalues sorted ascending.  Exact for real diagonal input (returns the
// sorted diagonal); otherwise a numerically stable Hermitian solver.
// Throws std::invalid_argument when the entrywise asymmetry exceeds 1e-10.
std::array<double, 16> hermitian_eigenvalues(const Operator16& m);

}  // namespace bellwit
