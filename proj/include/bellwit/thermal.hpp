#pragma once

#include <optional>
#include <utility>

#include "bellwit/bell.hpp"

namespace bellwit {

// Canonical-ensemble model (k_B = 1): a sixteen-level spectrum, optionally
// tagged with the (J, h) couplings it was built from.
struct ThermalModel {
  EnergySpectrum spectrum{};
  std::optional<std::pair<double, double>> couplings;  // (J, h) when known

  static ThermalModel from_spectrum(const EnergySpectrum& energies);
  static ThermalModel from_couplings(double j_coupling, double h_field);
};

// Spectrum of the example Hamiltonian (six two-body zz couplings with
// strength -J plus h times XXXX + YYYY + ZZZZ):
//   E1 = 3h - 6J, E2 = -h - 6J, E7 = E11 = E13 = 3h + 2J,
//   E8 = E12 = E14 = -h + 2J, all others -h.
EnergySpectrum heisenberg_like_energies(double j_coupling, double h_field);

// Z = sum_j exp(-E_j / T), shift-stabilized.
// Throws std::invalid_argument for T <= 0.
double partition_function(const EnergySpectrum& energies, double temperature);

// envelope_trace(energies_to_probs(spectrum, T), p, a0) by construction.
double thermal_envelope_trace(const ThermalModel& model, double temperature,
                              double p, int a0);

// Closed form of the envelope trace for the example Hamiltonian, with free
// sign selectors:
//   1 + [a0 (1+e^u)(-1+e^v) + 8 a1 p (1-e^u)] /
//       [3 + 3 e^u + 8 e^w + (1+e^u) e^v]
// with u = 4h/T, v = 8J/T, w = 2(2h+J)/T, computed with a common
// max-exponent shift.  Throws std::invalid_argument for T <= 0.
double closed_form_example_trace(double j_coupling, double h_field,
                                 double temperature, int a0, int a1, double p);

// Strong-coupling limit (J -> -infinity) of the closed form:
//   1 + [-a0 (1+e^u) + 8 a1 p (1-e^u)] / (3 + 3 e^u), u = 4h/T.
double reduced_limit_trace(double h_field, double temperature, int a0, int a1,
                           double p);

// Extreme-coupling limit (J -> -infinity, h -> +infinity): 1 - (a0 + 8 a1 p)/3.
double asymptotic_trace(int a0, int a1, double p);

struct Bracket {
  double lo = 1e-2;
  double hi = 1e2;
};

struct ThresholdResult {
  std::optional<double> t_threshold;  // empty: no sign change in the bracket
  double residual = 0.0;              // |trace| at the reported threshold
  Bracket bracket;                    // final sign-change bracket when found

  bool found() const { return t_threshold.has_value(); }
};

// Bisection root of the envelope trace in temperature.  When the trace has
// the same sign at both bracket ends the result carries no threshold (the
// always-entangled regime), which is distinct from an error.
ThresholdResult threshold_temperature(const ThermalModel& model, double p,
                                      int a0, Bracket bracket = {});

// Same root-solve on reduced_limit_trace.
ThresholdResult reduced_threshold_temperature(double h_field, double p, int a0,
                                              int a1, Bracket bracket = {});

// Overlap with the maximally entangled reference state (|0000> + |1111>)/sqrt2,
// which is the first basis projector: F = p1.
double fidelity(const ProbabilityVector& probs);

// F at thermal equilibrium: first Boltzmann weight of the model's spectrum.
double thermal_fidelity(const ThermalModel& model, double temperature);

// Closed form of the thermal fidelity for the example Hamiltonian at h = 1:
//   F(T) = e^v / (3 + 3 e^u + 8 e^w + (1+e^u) e^v),
// u = 4/T, v = 8J/T, w = 2(2+J)/T, shift-stabilized.
double fidelity_closed_form_h1(double j_coupling, double temperature);

// Strict criterion F > 1/2.
bool fidelity_detects(const ProbabilityVector& probs);

}  // namespace bellwit
