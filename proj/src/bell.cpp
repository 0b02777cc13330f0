#include "bellwit/bell.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bellwit {

void validate_probs(const ProbabilityVector& p) {
  double sum = 0.0;
  for (int i = 0; i < 16; ++i) {
    if (!std::isfinite(p[i])) {
      throw std::invalid_argument("probability vector: non-finite component " +
                                  std::to_string(i + 1));
    }
    if (p[i] < -1e-12) {
      throw std::invalid_argument(
          "probability vector: component " + std::to_string(i + 1) +
          " is negative (" + std::to_string(p[i]) + ")");
    }
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("probability vector: sum deviates from 1 by " +
                                std::to_string(sum - 1.0));
  }
}

Vector16 bell_basis_vector(int i) {
  if (i < 1 || i > 16) {
    throw std::out_of_range("bell_basis_vector: index " + std::to_string(i) +
                            " outside 1..16");
  }
  const int b = (i - 1) / 2;          // 0..7
  const int partner = 15 - b;         // bitwise complement of b
  const double amp = 1.0 / std::sqrt(2.0);
  Vector16 v = Vector16::Zero();
  v(b) = Complex(amp, 0.0);
  v(partner) = Complex((i % 2 == 1) ? amp : -amp, 0.0);
  return v;
}

Operator16 density_from_probs(const ProbabilityVector& p) {
  validate_probs(p);
  Operator16 rho = Operator16::Zero();
  for (int i = 1; i <= 16; ++i) {
    const Vector16 v = bell_basis_vector(i);
    rho += p[i - 1] * (v * v.adjoint());
  }
  return rho;
}

CorrelationVector correlations_from_probs(const ProbabilityVector& p) {
  validate_probs(p);
  CorrelationVector r{};
  for (int k = 0; k < 15; ++k) {
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) acc += kSignTable[k][i] * p[i];
    r[k] = acc;
  }
  return r;
}

CorrelationVector correlations_via_trace(const Operator16& rho) {
  if (hermiticity_defect(rho) > 1e-10) {
    throw std::invalid_argument("correlations_via_trace: non-Hermitian input");
  }
  CorrelationVector r{};
  for (int k = 0; k < 15; ++k) {
    const Operator16 pk = pauli_string_matrix(
        parse_pauli_string(kCorrelationStrings[k]));
    r[k] = (rho * pk).trace().real();
  }
  return r;
}

ProbabilityVector probs_from_correlations(const CorrelationVector& r) {
  ProbabilityVector p{};
  for (int i = 0; i < 16; ++i) {
    double acc = 1.0;
    for (int k = 0; k < 15; ++k) acc += kSignTable[k][i] * r[k];
    p[i] = acc / 16.0;
  }
  return p;
}

ProbabilityVector energies_to_probs(const EnergySpectrum& energies,
                                    double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("energies_to_probs: temperature must be > 0");
  }
  for (double e : energies) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("energies_to_probs: non-finite energy");
    }
  }
  const double emin = *std::min_element(energies.begin(), energies.end());
  ProbabilityVector w{};
  double z = 0.0;
  for (int i = 0; i < 16; ++i) {
    w[i] = std::exp(-(energies[i] - emin) / temperature);
    z += w[i];
  }
  for (int i = 0; i < 16; ++i) w[i] /= z;
  return w;
}

EnergySpectrum pauli_terms_to_energies(const std::vector<PauliTerm>& terms) {
  std::map<std::string, double> merged;
  for (const PauliTerm& t : terms) merged[t.word.str()] += t.coefficient;

  Operator16 h = Operator16::Zero();
  for (const auto& [word, coeff] : merged) {
    h += coeff * pauli_string_matrix(parse_pauli_string(word));
  }

  std::array<Vector16, 16> basis;
  for (int i = 1; i <= 16; ++i) basis[i - 1] = bell_basis_vector(i);

  EnergySpectrum energies{};
  for (int i = 0; i < 16; ++i) {
    const Vector16 hv = h * basis[i];
    for (int j = 0; j < 16; ++j) {
      const Complex elem = basis[j].dot(hv);
      if (i == j) {
        energies[i] = elem.real();
      } else if (std::abs(elem) > 1e-10) {
        throw std::invalid_argument(
            "pauli_terms_to_energies: Hamiltonian not diagonal in the Bell "
            "basis; off-diagonal element (" +
            std::to_string(j + 1) + "," + std::to_string(i + 1) +
            ") has magnitude " + std::to_string(std::abs(elem)));
      }
    }
  }
  return energies;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ProbabilityVector sample_simplex(std::mt19937_64& rng) {
  std::array<double, 17> cuts{};
  cuts[0] = 0.0;
  cuts[16] = 1.0;
  for (int i = 1; i <= 15; ++i) cuts[i] = uniform_unit(rng);
  std::sort(cuts.begin() + 1, cuts.begin() + 16);
  ProbabilityVector p{};
  for (int i = 0; i < 16; ++i) p[i] = cuts[i + 1] - cuts[i];
  return p;
}

}  // namespace bellwit
