#include "bellwit/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "bellwit/witness.hpp"

namespace bellwit {

ThermalModel ThermalModel::from_spectrum(const EnergySpectrum& energies) {
  for (double e : energies) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("ThermalModel: non-finite energy");
    }
  }
  return ThermalModel{energies, std::nullopt};
}

ThermalModel ThermalModel::from_couplings(double j_coupling, double h_field) {
  return ThermalModel{heisenberg_like_energies(j_coupling, h_field),
                      std::make_pair(j_coupling, h_field)};
}

EnergySpectrum heisenberg_like_energies(double j_coupling, double h_field) {
  if (!std::isfinite(j_coupling) || !std::isfinite(h_field)) {
    throw std::invalid_argument("heisenberg_like_energies: non-finite coupling");
  }
  const double j = j_coupling, h = h_field;
  EnergySpectrum e;
  e.fill(-h);
  e[0] = 3.0 * h - 6.0 * j;   // E1
  e[1] = -h - 6.0 * j;        // E2
  e[6] = 3.0 * h + 2.0 * j;   // E7
  e[7] = -h + 2.0 * j;        // E8
  e[10] = 3.0 * h + 2.0 * j;  // E11
  e[11] = -h + 2.0 * j;       // E12
  e[12] = 3.0 * h + 2.0 * j;  // E13
  e[13] = -h + 2.0 * j;       // E14
  return e;
}

double partition_function(const EnergySpectrum& energies, double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("partition_function: temperature must be > 0");
  }
  const double emin = *std::min_element(energies.begin(), energies.end());
  double z = 0.0;
  for (double e : energies) z += std::exp(-(e - emin) / temperature);
  return z * std::exp(-emin / temperature);
}

double thermal_envelope_trace(const ThermalModel& model, double temperature,
                              double p, int a0) {
  return envelope_trace(energies_to_probs(model.spectrum, temperature), p, a0);
}

double closed_form_example_trace(double j_coupling, double h_field,
                                 double temperature, int a0, int a1,
                                 double p) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument(
        "closed_form_example_trace: temperature must be > 0");
  }
  const double u = 4.0 * h_field / temperature;
  const double v = 8.0 * j_coupling / temperature;
  const double w = 2.0 * (2.0 * h_field + j_coupling) / temperature;

  // Common shift m = max(0,u) + max(0,v) dominates every exponent that
  // appears (0, u, v, u+v, and w), so all ratios stay bounded.
  const double m1 = std::max(0.0, u);
  const double m2 = std::max(0.0, v);
  const double m = m1 + m2;

  const double num =
      a0 * (std::exp(-m1) + std::exp(u - m1)) *
          (-std::exp(-m2) + std::exp(v - m2)) +
      8.0 * a1 * p * (std::exp(-m) - std::exp(u - m));
  const double den = 3.0 * std::exp(-m) + 3.0 * std::exp(u - m) +
                     8.0 * std::exp(w - m) + std::exp(v - m) +
                     std::exp(u + v - m);
  return 1.0 + num / den;
}

double reduced_limit_trace(double h_field, double temperature, int a0, int a1,
                           double p) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("reduced_limit_trace: temperature must be > 0");
  }
  const double u = 4.0 * h_field / temperature;
  const double m = std::max(0.0, u);
  const double num = -a0 * (std::exp(-m) + std::exp(u - m)) +
                     8.0 * a1 * p * (std::exp(-m) - std::exp(u - m));
  const double den = 3.0 * std::exp(-m) + 3.0 * std::exp(u - m);
  return 1.0 + num / den;
}

double asymptotic_trace(int a0, int a1, double p) {
  return 1.0 - (a0 + 8.0 * a1 * p) / 3.0;
}

namespace {

ThresholdResult bisect_threshold(const std::function<double(double)>& trace,
                                 Bracket bracket) {
  if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo)) {
    throw std::invalid_argument("threshold bracket: need 0 < lo < hi");
  }
  double lo = bracket.lo, hi = bracket.hi;
  double flo = trace(lo), fhi = trace(hi);

  ThresholdResult result;
  result.bracket = bracket;
  if (flo == 0.0) {
    result.t_threshold = lo;
    result.residual = 0.0;
    return result;
  }
  if (fhi == 0.0) {
    result.t_threshold = hi;
    result.residual = 0.0;
    return result;
  }
  if ((flo > 0.0) == (fhi > 0.0)) {
    return result;  // no sign change: no threshold in range
  }

  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = trace(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  const double root = 0.5 * (lo + hi);
  result.t_threshold = root;
  result.residual = std::abs(trace(root));
  result.bracket = Bracket{lo, hi};
  return result;
}

}  // namespace

ThresholdResult threshold_temperature(const ThermalModel& model, double p,
                                      int a0, Bracket bracket) {
  return bisect_threshold(
      [&](double t) { return thermal_envelope_trace(model, t, p, a0); },
      bracket);
}

ThresholdResult reduced_threshold_temperature(double h_field, double p, int a0,
                                              int a1, Bracket bracket) {
  return bisect_threshold(
      [&](double t) { return reduced_limit_trace(h_field, t, a0, a1, p); },
      bracket);
}

double fidelity(const ProbabilityVector& probs) {
  validate_probs(probs);
  return probs[0];
}

double thermal_fidelity(const ThermalModel& model, double temperature) {
  return energies_to_probs(model.spectrum, temperature)[0];
}

double fidelity_closed_form_h1(double j_coupling, double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument(
        "fidelity_closed_form_h1: temperature must be > 0");
  }
  const double u = 4.0 / temperature;
  const double v = 8.0 * j_coupling / temperature;
  const double w = 2.0 * (2.0 + j_coupling) / temperature;
  const double m = std::max({0.0, u, v, w, u + v});
  const double num = std::exp(v - m);
  const double den = 3.0 * std::exp(-m) + 3.0 * std::exp(u - m) +
                     8.0 * std::exp(w - m) + std::exp(v - m) +
                     std::exp(u + v - m);
  return num / den;
}

bool fidelity_detects(const ProbabilityVector& probs) {
  return fidelity(probs) > 0.5;
}

}  // namespace bellwit
