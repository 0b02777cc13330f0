// Acceptance harness: eight end-to-end checks, one PASS/FAIL line each.
// Exits nonzero when any check fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellwit/bell.hpp"
#include "bellwit/io.hpp"
#include "bellwit/ppt.hpp"
#include "bellwit/thermal.hpp"
#include "bellwit/witness.hpp"

namespace {

using namespace bellwit;

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s  criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void run_criterion(int criterion,
                   const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    report(criterion, ok, detail);
  } catch (const std::exception& e) {
    report(criterion, false, std::string("exception: ") + e.what());
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

ProbabilityVector slice_probs(double p1, double p2) {
  ProbabilityVector p{};
  p[0] = p1;
  p[1] = p2;
  p[2] = std::max(0.0, 1.0 - p1 - p2);
  return p;
}

// 1. Spectral and closed-form PPT classification agree on large random
//    batches (uniform and boundary-biased), within the time budget.
std::pair<bool, std::string> criterion_ppt_agreement() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(default_seed());
  int disagreements = 0;
  const int n_uniform = 10000, n_boundary = 1000;
  for (int i = 0; i < n_uniform + n_boundary; ++i) {
    const ProbabilityVector p =
        (i < n_uniform) ? sample_simplex(rng) : sample_near_boundary(rng);
    const bool spectral = is_ppt_spectral(p, 1e-10).is_ppt;
    const bool closed = is_ppt_inequalities(p, 1e-10);
    if (spectral != closed) ++disagreements;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool ok = disagreements == 0 && seconds < 60.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "PPT dual-route agreement on %d uniform + %d boundary-biased "
                "samples: %d disagreements in %.1fs (budget 60s)",
                n_uniform, n_boundary, disagreements, seconds);
  return {ok, buf};
}

// 2. Threshold temperatures reproduce the reference table.
std::pair<bool, std::string> criterion_threshold_table() {
  const Bracket sweep{0.05, 50.0};
  struct Row {
    double j, expected, tol;
  };
  const std::vector<Row> rows{{-1.0, 2.6135, 1e-3},
                              {-2.0, 3.6232, 1e-3},
                              {-3.0, 4.3418, 1e-3},
                              {-50.0, 7.8305, 5e-3}};
  bool ok = true;
  double worst = 0.0;
  for (const Row& row : rows) {
    const ThresholdResult th = threshold_temperature(
        ThermalModel::from_couplings(row.j, 1.0), 1.0, +1, sweep);
    if (!th.found()) {
      ok = false;
      continue;
    }
    const double err = std::abs(*th.t_threshold - row.expected);
    worst = std::max(worst, err / row.tol);
    if (err > row.tol) ok = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "threshold table at J=-1,-2,-3 (tol 1e-3) and J=-50 "
                "strong-coupling stand-in (tol 5e-3): worst error %.2f of "
                "tolerance",
                worst);
  return {ok, buf};
}

// 3. The worked-example zero locus vanishes on both branches and every
//    tangent-line member grazes the curve without crossing it.
std::pair<bool, std::string> criterion_zero_locus() {
  const double lo = (9.0 - 5.0 * std::sqrt(2.0)) / 18.0;
  const double hi_lower = 7.0 / 9.0, hi_upper = 2.0 / 9.0;
  const int n = 400;

  const auto curve_point = [&](int branch, double p1) {
    const ExampleCurvePoint pt = envelope_zero_branches(p1, 0.1);
    const auto& p2 = branch == 0 ? pt.p2_lower : pt.p2_upper;
    if (!p2.has_value()) {
      throw std::runtime_error("zero-locus branch missing inside its interval");
    }
    return slice_probs(p1, *p2);
  };

  double worst_residual = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) / n;
    for (int branch = 0; branch < 2; ++branch) {
      const double hi = branch == 0 ? hi_lower : hi_upper;
      const ProbabilityVector probs = curve_point(branch, lo + t * (hi - lo));
      worst_residual = std::max(
          worst_residual, std::abs(linear_family_min_trace(probs, 0.1, +1)));
    }
  }
  const bool residual_ok = worst_residual <= 1e-9;

  // Tangency is a statement about the whole curve, so the touching point is
  // located by ternary search per branch (the member trace is unimodal along
  // each arc); a fixed grid would miss it near the branch meet point.
  double worst_gap = 0.0, most_negative = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double psi2 = kPi / 2.0 + k * kPi / 50.0;
    WitnessSpec member;
    member.p = 0.1;
    member.psi2 = psi2;
    double line_min = std::numeric_limits<double>::infinity();
    for (int branch = 0; branch < 2; ++branch) {
      const double hi = branch == 0 ? hi_lower : hi_upper;
      double a = lo, b = hi;
      for (int iter = 0; iter < 200; ++iter) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (linear_trace(member, curve_point(branch, m1)) <=
            linear_trace(member, curve_point(branch, m2))) {
          b = m2;
        } else {
          a = m1;
        }
      }
      line_min = std::min(
          line_min, linear_trace(member, curve_point(branch, 0.5 * (a + b))));
    }
    worst_gap = std::max(worst_gap, line_min);
    most_negative = std::min(most_negative, line_min);
  }
  const bool tangent_ok = worst_gap <= 1e-6 && most_negative >= -1e-9;

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "zero locus: worst on-curve residual %.2e (tol 1e-9); 50 "
                "tangent members: largest minimum gap %.2e (tol 1e-6), most "
                "negative %.2e (floor -1e-9)",
                worst_residual, worst_gap, most_negative);
  return {residual_ok && tangent_ok, buf};
}

// 4. Extreme couplings sit on the asymptotic plateau.
std::pair<bool, std::string> criterion_asymptote() {
  std::mt19937_64 rng(default_seed() ^ 0xa5a5a5a5ull);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int a0 = (rng() % 2 == 0) ? +1 : -1;
    const int a1 = (rng() % 2 == 0) ? +1 : -1;
    const double p = uniform_unit(rng);
    const double target = asymptotic_trace(a0, a1, p);
    for (double t : {0.5, 1.0, 5.0}) {
      worst = std::max(
          worst, std::abs(closed_form_example_trace(-40.0, 40.0, t, a0, a1, p) -
                          target));
    }
  }
  const ThermalModel deep = ThermalModel::from_couplings(-40.0, 40.0);
  double worst_plateau = 0.0;
  for (double t : {0.5, 1.0, 5.0}) {
    worst_plateau = std::max(
        worst_plateau,
        std::abs(thermal_envelope_trace(deep, t, 1.0, +1) - (-2.0)));
  }
  const bool ok = worst <= 1e-6 && worst_plateau <= 1e-6;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "(J,h)=(-40,40) vs asymptote: worst closed-form deviation "
                "%.2e over 10 random selector tuples, plateau deviation from "
                "-2 is %.2e (tol 1e-6)",
                worst, worst_plateau);
  return {ok, buf};
}

// 5. Every enumerated family member stays nonnegative on product states.
std::pair<bool, std::string> criterion_family_positivity() {
  const std::uint64_t seed = default_seed();
  std::mt19937_64 draw_rng(seed);
  const auto specs = enumerate_family(FamilyReading::Deduplicated);
  const int draws = 10;
  double global_min = std::numeric_limits<double>::infinity();
  std::vector<std::string> violations;
  for (std::size_t idx = 0; idx < specs.size(); ++idx) {
    WitnessSpec spec = specs[idx];
    double worst = std::numeric_limits<double>::infinity();
    for (int d = 0; d < draws; ++d) {
      spec.p = uniform_unit(draw_rng);
      spec.psi1 = 2.0 * kPi * uniform_unit(draw_rng);
      spec.psi2 = 2.0 * kPi * uniform_unit(draw_rng);
      const WitnessAmplitudes amp =
          WitnessAmplitudes::from_mixing(spec.p, spec.psi1, spec.psi2);
      MinimizeOptions opts;
      opts.multistarts = 16;
      opts.seed = splitmix64(seed + idx * 1000003ull + d);
      worst = std::min(worst, min_product_trace(spec, amp, opts));
    }
    global_min = std::min(global_min, worst);
    if (worst < -1e-7) violations.push_back(specs[idx].id());
  }
  std::string detail =
      "product-state positivity over " + std::to_string(specs.size()) +
      " members x " + std::to_string(draws) + " draws: global minimum " +
      format_sig12(global_min) + " (floor -1e-7)";
  if (!violations.empty()) {
    detail += "; violating ids:";
    for (const std::string& id : violations) detail += " " + id;
  }
  return {violations.empty(), detail};
}

// 6. Closed form, model route, and weight route agree pointwise.
std::pair<bool, std::string> criterion_thermal_chain() {
  double worst = 0.0;
  int points = 0;
  for (int ji = 0; ji < 10; ++ji) {
    const double j = -4.0 + 4.0 * ji / 9.0;
    for (int hi = 0; hi < 10; ++hi) {
      const double h = 4.0 * hi / 9.0;
      const ThermalModel model = ThermalModel::from_couplings(j, h);
      for (int ti = 0; ti < 10; ++ti) {
        const double t = 0.2 + (20.0 - 0.2) * ti / 9.0;
        ++points;
        for (double p : {1.0, 0.4}) {
          for (int a0 : {+1, -1}) {
            const double closed =
                closed_form_example_trace(j, h, t, a0, +1, p);
            const double via_model = thermal_envelope_trace(model, t, p, a0);
            const double via_weights = envelope_trace(
                energies_to_probs(model.spectrum, t), p, a0);
            worst = std::max(worst, std::abs(closed - via_model));
            worst = std::max(worst, std::abs(via_model - via_weights));
          }
        }
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "closed form = model route = weight route on a %d-point "
                "(J,h,T) grid x 4 (p,a0) combos: worst deviation %.2e (tol "
                "1e-12)",
                points, worst);
  return {worst <= 1e-12, buf};
}

// 7. Fidelity: closed form equals the first Boltzmann weight, approaches
//    1/16 at high temperature, and never fires below the witness threshold.
std::pair<bool, std::string> criterion_fidelity() {
  double worst_rel = 0.0;
  for (double j : {-1.0, -2.0, -3.0}) {
    const ThermalModel model = ThermalModel::from_couplings(j, 1.0);
    for (int ti = 0; ti < 25; ++ti) {
      const double t = 0.2 + (30.0 - 0.2) * ti / 24.0;
      const double closed = fidelity_closed_form_h1(j, t);
      const double weight = thermal_fidelity(model, t);
      worst_rel = std::max(worst_rel, std::abs(closed - weight) /
                                          std::max(closed, 1e-300));
    }
  }
  const bool identity_ok = worst_rel <= 1e-12;

  double worst_limit = 0.0;
  for (double j : {-1.0, -2.0, -3.0}) {
    worst_limit = std::max(
        worst_limit, std::abs(fidelity_closed_form_h1(j, 1e6) - 1.0 / 16.0));
  }
  const bool limit_ok = worst_limit <= 1e-5;

  bool blind_ok = true;
  for (double j : {-1.0, -2.0, -3.0}) {
    const ThermalModel model = ThermalModel::from_couplings(j, 1.0);
    const ThresholdResult th =
        threshold_temperature(model, 1.0, +1, Bracket{0.05, 50.0});
    if (!th.found()) {
      blind_ok = false;
      continue;
    }
    for (int k = 0; k < 50; ++k) {
      const double t = 0.05 + (0.999 * *th.t_threshold - 0.05) * k / 49.0;
      const bool detecting = thermal_envelope_trace(model, t, 1.0, +1) < 0.0;
      const bool fires = thermal_fidelity(model, t) > 0.5;
      if (!detecting || fires) blind_ok = false;
    }
  }

  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "fidelity: closed form vs first weight worst relative "
                "deviation %.2e (tol 1e-12); high-T limit off 1/16 by %.2e "
                "(tol 1e-5); below-threshold criterion silent while the "
                "witness detects: %s",
                worst_rel, worst_limit, blind_ok ? "yes" : "no");
  return {identity_ok && limit_ok && blind_ok, buf};
}

// 8. Probability/correlation transforms invert each other and the Pauli
//    words are trace-orthogonal.
std::pair<bool, std::string> criterion_transforms() {
  std::mt19937_64 rng(default_seed() ^ 0x5151ull);
  double worst_round = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ProbabilityVector p = sample_simplex(rng);
    const ProbabilityVector back =
        probs_from_correlations(correlations_from_probs(p));
    for (int i = 0; i < 16; ++i) {
      worst_round = std::max(worst_round, std::abs(back[i] - p[i]));
    }
  }
  const bool round_ok = worst_round <= 1e-12;

  const std::array<PauliLabel, 4> labels{PauliLabel::I, PauliLabel::X,
                                         PauliLabel::Y, PauliLabel::Z};
  double worst_orth = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    PauliString4 a, b;
    for (int q = 0; q < 4; ++q) {
      a.labels[q] = labels[rng() % 4];
      b.labels[q] = labels[rng() % 4];
    }
    const Complex t = (pauli_string_matrix(a) * pauli_string_matrix(b)).trace();
    const double expected = (a == b) ? 16.0 : 0.0;
    worst_orth = std::max(worst_orth, std::abs(t - Complex(expected, 0.0)));
  }
  const bool orth_ok = worst_orth == 0.0;

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "transforms: weight<->correlation round trip worst deviation "
                "%.2e over 1000 samples (tol 1e-12); word trace-orthogonality "
                "worst deviation %.2e over 1000 pairs (exact)",
                worst_round, worst_orth);
  return {round_ok && orth_ok, buf};
}

}  // namespace

int main() {
  run_criterion(1, criterion_ppt_agreement);
  run_criterion(2, criterion_threshold_table);
  run_criterion(3, criterion_zero_locus);
  run_criterion(4, criterion_asymptote);
  run_criterion(5, criterion_family_positivity);
  run_criterion(6, criterion_thermal_chain);
  run_criterion(7, criterion_fidelity);
  run_criterion(8, criterion_transforms);
  if (g_failures > 0) {
    std::printf("RESULT: %d of 8 criteria failed\n", g_failures);
    return 1;
  }
  std::printf("RESULT: all 8 criteria passed\n");
  return 0;
}
