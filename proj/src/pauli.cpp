#include "bellwit/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace bellwit {

char pauli_char(PauliLabel label) {
  switch (label) {
    case PauliLabel::I: return 'I';
    case PauliLabel::X: return 'X';
    case PauliLabel::Y: return 'Y';
    case PauliLabel::Z: return 'Z';
  }
  throw std::logic_error("unreachable Pauli label");
}

std::string PauliString4::str() const {
  std::string s(4, 'I');
  for (int q = 0; q < 4; ++q) s[q] = pauli_char(labels[q]);
  return s;
}

PauliString4 parse_pauli_string(std::string_view text) {
  if (text.size() != 4) {
    throw std::invalid_argument("expected 4 labels, got " +
                                std::to_string(text.size()));
  }
  PauliString4 ps;
  for (int q = 0; q < 4; ++q) {
    switch (std::toupper(static_cast<unsigned char>(text[q]))) {
      case 'I': ps.labels[q] = PauliLabel::I; break;
      case 'X': ps.labels[q] = PauliLabel::X; break;
      case 'Y': ps.labels[q] = PauliLabel::Y; break;
      case 'Z': ps.labels[q] = PauliLabel::Z; break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli label '") +
                                    text[q] + "' at position " +
                                    std::to_string(q));
    }
  }
  return ps;
}

Matrix2 pauli_matrix(PauliLabel label) {
  Matrix2 m;
  const Complex i(0.0, 1.0);
  switch (label) {
    case PauliLabel::I: m << 1, 0, 0, 1; break;
    case PauliLabel::X: m << 0, 1, 1, 0; break;
    case PauliLabel::Y: m << 0, -i, i, 0; break;
    case PauliLabel::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Operator16 pauli_string_matrix(const PauliString4& ps) {
  std::array<Matrix2, 4> factors;
  for (int q = 0; q < 4; ++q) factors[q] = pauli_matrix(ps.labels[q]);
  Operator16 out;
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      Complex v(1.0, 0.0);
      for (int q = 0; q < 4; ++q) {
        const int shift = 3 - q;  // qubit A = most significant bit
        v *= factors[q]((r >> shift) & 1, (c >> shift) & 1);
      }
      out(r, c) = v;
    }
  }
  return out;
}

double hermiticity_defect(const Operator16& m) {
  double worst = 0.0;
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    }
  }
  return worst;
}

std::array<double, 16> hermitian_eigenvalues(const Operator16& m) {
  if (hermiticity_defect(m) > 1e-10) {
    throw std::invalid_argument(
        "hermitian_eigenvalues: input is not Hermitian (asymmetry > 1e-10)");
  }

  bool exactly_diagonal = true;
  for (int r = 0; r < 16 && exactly_diagonal; ++r) {
    for (int c = 0; c < 16; ++c) {
      const Complex v = m(r, c);
      if (r != c ? (v != Complex(0.0, 0.0)) : (v.imag() != 0.0)) {
        exactly_diagonal = false;
        break;
      }
    }
  }

  std::array<double, 16> evals;
  if (exactly_diagonal) {
    for (int r = 0; r < 16; ++r) evals[r] = m(r, r).real();
    std::sort(evals.begin(), evals.end());
    return evals;
  }

  Eigen::SelfAdjointEigenSolver<Operator16> solver(m,
                                                   Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: solver failed");
  }
  for (int r = 0; r < 16; ++r) evals[r] = solver.eigenvalues()(r);
  std::sort(evals.begin(), evals.end());
  return evals;
}

}  // namespace bellwit
