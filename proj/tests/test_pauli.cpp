#include <doctest.h>

#include <random>

#include "bellwit/pauli.hpp"

using namespace bellwit;

namespace {

const std::array<PauliLabel, 4> kLabels = {PauliLabel::I, PauliLabel::X,
                                           PauliLabel::Y, PauliLabel::Z};

PauliString4 make_string(PauliLabel a, PauliLabel b, PauliLabel c,
                         PauliLabel d) {
  return PauliString4{{a, b, c, d}};
}

}  // namespace

TEST_CASE("single-qubit matrices are involutions and traceless off identity") {
  for (PauliLabel l : kLabels) {
    const Matrix2 m = pauli_matrix(l);
    CHECK((m * m - Matrix2::Identity()).cwiseAbs().maxCoeff() == 0.0);
    if (l != PauliLabel::I) {
      CHECK(m.trace() == Complex(0.0, 0.0));
    }
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
  // Y has the exact entries {{0, -i}, {i, 0}}.
  const Matrix2 y = pauli_matrix(PauliLabel::Y);
  CHECK(y(0, 1) == Complex(0.0, -1.0));
  CHECK(y(1, 0) == Complex(0.0, 1.0));
}

TEST_CASE("parse_pauli_string accepts mixed case and rejects bad input") {
  const PauliString4 ps = parse_pauli_string("xYzI");
  CHECK(ps.str() == "XYZI");
  CHECK(ps == make_string(PauliLabel::X, PauliLabel::Y, PauliLabel::Z,
                          PauliLabel::I));

  CHECK_THROWS_WITH_AS(parse_pauli_string("ZZI"),
                       doctest::Contains("expected 4 labels, got 3"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_pauli_string("ZZIIZ"),
                       doctest::Contains("expected 4 labels, got 5"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_pauli_string("ABCD"), std::invalid_argument);
  try {
    parse_pauli_string("IXQZ");
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find('Q') != std::string::npos);
    CHECK(msg.find('2') != std::string::npos);  // 0-based position
  }
}

TEST_CASE("sixteen-dimensional words multiply factorwise") {
  // XXXX flips every bit: maps |0000> to |1111>.
  const Operator16 xxxx = pauli_string_matrix(parse_pauli_string("XXXX"));
  Vector16 e0 = Vector16::Zero();
  e0(0) = 1.0;
  const Vector16 flipped = xxxx * e0;
  for (int i = 0; i < 16; ++i) {
    CHECK(flipped(i) == (i == 15 ? Complex(1.0, 0.0) : Complex(0.0, 0.0)));
  }

  // ZZII is diagonal with parity of the two leading bits.
  const Operator16 zzii = pauli_string_matrix(parse_pauli_string("ZZII"));
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      if (r != c) {
        CHECK(zzii(r, c) == Complex(0.0, 0.0));
      }
    }
    const int sign = (((r >> 3) ^ (r >> 2)) & 1) ? -1 : +1;
    CHECK(zzii(r, r) == Complex(sign, 0.0));
  }
}

TEST_CASE("pauli words are orthogonal under the trace inner product") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 64; ++trial) {
    PauliString4 a, b;
    for (int q = 0; q < 4; ++q) {
      a.labels[q] = kLabels[pick(rng)];
      b.labels[q] = kLabels[pick(rng)];
    }
    const Complex t =
        (pauli_string_matrix(a) * pauli_string_matrix(b)).trace();
    if (a == b) {
      CHECK(t == Complex(16.0, 0.0));
    } else {
      CHECK(std::abs(t) == 0.0);
    }
  }
}

TEST_CASE("hermitian_eigenvalues is exact for real diagonal input") {
  Operator16 m = Operator16::Zero();
  for (int i = 0; i < 16; ++i) m(i, i) = Complex(15.0 - i, 0.0);
  const std::array<double, 16> ev = hermitian_eigenvalues(m);
  for (int i = 0; i < 16; ++i) {
    CHECK(ev[i] == static_cast<double>(i));  // sorted ascending, exact
  }
}

TEST_CASE("hermitian_eigenvalues matches known word spectra") {
  const Operator16 w = pauli_string_matrix(parse_pauli_string("XYZX"));
  const std::array<double, 16> ev = hermitian_eigenvalues(w);
  for (int i = 0; i < 8; ++i) {
    CHECK(ev[i] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev[8 + i] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
  Operator16 m = Operator16::Zero();
  m(0, 1) = Complex(1.0, 0.0);  // no matching conjugate below the diagonal
  CHECK(hermiticity_defect(m) > 1e-10);
  CHECK_THROWS_AS(hermitian_eigenvalues(m), std::invalid_argument);
}
