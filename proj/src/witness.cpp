#include "bellwit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace bellwit {

namespace {

constexpr double kPi = std::numbers::pi;

int correlation_index(const PauliString4& ps) {
  const std::string s = ps.str();
  for (int k = 0; k < 15; ++k) {
    if (s == kCorrelationStrings[k]) return k;
  }
  throw std::logic_error("word " + s + " carries no correlation coefficient");
}

}  // namespace

const char* perm_token(QubitPerm perm) {
  switch (perm) {
    case QubitPerm::Identity: return "pid";
    case QubitPerm::Swap12: return "p12";
    case QubitPerm::Swap13: return "p13";
    case QubitPerm::Swap14: return "p14";
    case QubitPerm::Swap23: return "p23";
    case QubitPerm::Swap34: return "p34";
  }
  throw std::logic_error("unreachable perm");
}

std::array<int, 2> perm_swap_positions(QubitPerm perm) {
  switch (perm) {
    case QubitPerm::Identity: return {0, 0};
    case QubitPerm::Swap12: return {0, 1};
    case QubitPerm::Swap13: return {0, 2};
    case QubitPerm::Swap14: return {0, 3};
    case QubitPerm::Swap23: return {1, 2};
    case QubitPerm::Swap34: return {2, 3};
  }
  throw std::logic_error("unreachable perm");
}

PauliString4 apply_perm(QubitPerm perm, const PauliString4& ps) {
  const auto sw = perm_swap_positions(perm);
  PauliString4 out = ps;
  std::swap(out.labels[sw[0]], out.labels[sw[1]]);
  return out;
}

double WitnessAmplitudes::normalization_defect() const {
  const double target = std::hypot(h1(), h4()) + std::hypot(h2(), h3());
  const double scale = std::max(1.0, std::abs(a0));
  return std::max(std::abs(a0 - b0), std::abs(a0 - target)) / scale;
}

void WitnessAmplitudes::validate() const {
  const bool degenerate_identity =
      a0 > 0.0 && b0 == 0.0 && a1 == 0.0 && a2 == 0.0 && a3 == 0.0 && a4 == 0.0;
  if (degenerate_identity) return;
  if (!(a0 > 0.0)) {
    throw std::invalid_argument("witness amplitudes: a0 must be positive");
  }
  if (normalization_defect() > 1e-12) {
    throw std::invalid_argument(
        "witness amplitudes: normalization a0 = b0 = hypot(h1,h4) + "
        "hypot(h2,h3) violated beyond 1e-12");
  }
}

WitnessAmplitudes WitnessAmplitudes::from_mixing(double p, double psi1,
                                                 double psi2) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("witness amplitudes: p outside [0, 1]");
  }
  WitnessAmplitudes amp;
  amp.a0 = 1.0;
  amp.b0 = 1.0;
  const double c1 = std::cos(psi1), s1 = std::sin(psi1);
  const double c2 = std::cos(psi2), s2 = std::sin(psi2);
  amp.a1 = p * c1 + (1.0 - p) * c2;
  amp.a2 = p * c1 - (1.0 - p) * c2;
  amp.a3 = p * s1 + (1.0 - p) * s2;
  amp.a4 = -p * s1 + (1.0 - p) * s2;
  return amp;
}

WitnessAmplitudes WitnessAmplitudes::identity_only() {
  return WitnessAmplitudes{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
}

std::string WitnessSpec::id() const {
  std::string s = "f";
  for (int v : family) s += static_cast<char>('0' + v);
  s += "_z";
  s += (z_sign > 0) ? '+' : '-';
  s += "_o";
  if (o_slot > 0) s += std::to_string(o_slot);
  s += o_term.str();
  s += '_';
  s += perm_token(perm);
  return s;
}

namespace {

struct CompiledTerm {
  std::array<PauliLabel, 4> labels;
  double coefficient;
};

// The witness as a flat list of Pauli words (identity first), already
// normalized by a0 and with the permutation applied.
std::vector<CompiledTerm> compile_terms(const WitnessSpec& spec,
                                        const WitnessAmplitudes& amp) {
  amp.validate();
  if (spec.z_sign != 1 && spec.z_sign != -1) {
    throw std::invalid_argument("witness spec: z_sign must be +1 or -1");
  }
  for (int v : spec.family) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument("witness spec: family entries must be 0/1");
    }
  }
  const double inv = 1.0 / amp.a0;
  std::vector<CompiledTerm> terms;
  terms.reserve(10);
  terms.push_back({{PauliLabel::I, PauliLabel::I, PauliLabel::I, PauliLabel::I},
                   1.0});
  terms.push_back(
      {apply_perm(spec.perm, spec.o_term).labels, spec.z_sign * amp.b0 * inv});
  const std::array<double, 4> brackets{amp.a1, amp.a2, amp.a3, amp.a4};
  for (int k = 0; k < 4; ++k) {
    const double c = brackets[k] * inv;
    const double internal = (spec.family[k] == 0) ? 1.0 : -1.0;
    terms.push_back(
        {apply_perm(spec.perm, parse_pauli_string(kBracketPairs[k][0])).labels,
         c});
    terms.push_back(
        {apply_perm(spec.perm, parse_pauli_string(kBracketPairs[k][1])).labels,
         c * internal});
  }
  return terms;
}

// x = (theta1..theta4, phi1..phi4)
double eval_compiled(const std::vector<CompiledTerm>& terms,
                     const std::array<double, 8>& x) {
  // Per qubit: component value by label (I, X, Y, Z).
  double comp[4][4];
  for (int q = 0; q < 4; ++q) {
    const double st = std::sin(x[q]), ct = std::cos(x[q]);
    const double cp = std::cos(x[4 + q]), sp = std::sin(x[4 + q]);
    comp[q][0] = 1.0;
    comp[q][1] = st * cp;
    comp[q][2] = st * sp;
    comp[q][3] = ct;
  }
  double acc = 0.0;
  for (const CompiledTerm& t : terms) {
    double v = t.coefficient;
    for (int q = 0; q < 4; ++q) {
      v *= comp[q][static_cast<int>(t.labels[q])];
    }
    acc += v;
  }
  return acc;
}

// Standard Nelder-Mead in 8 dimensions; returns the best value found and
// leaves the best point in x0.
double nelder_mead(const std::function<double(const std::array<double, 8>&)>& f,
                   std::array<double, 8>& x0, double step, int max_iter) {
  constexpr int n = 8;
  std::array<std::array<double, 8>, n + 1> pts;
  std::array<double, n + 1> vals;
  pts[0] = x0;
  vals[0] = f(x0);
  for (int i = 0; i < n; ++i) {
    pts[i + 1] = x0;
    pts[i + 1][i] += step;
    vals[i + 1] = f(pts[i + 1]);
  }
  std::array<int, n + 1> order;
  for (int it = 0; it < max_iter; ++it) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (vals[worst] - vals[best] < 1e-13 * (1.0 + std::abs(vals[best]))) break;

    std::array<double, 8> centroid{};
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < n; ++d) centroid[d] += pts[i][d] / n;
    }
    auto blend = [&](double t) {
      std::array<double, 8> p;
      for (int d = 0; d < n; ++d) {
        p[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
      }
      return p;
    };

    const auto reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const auto expanded = blend(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
    } else {
      const bool outside = fr < vals[worst];
      const auto contracted = blend(outside ? -0.5 : 0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = contracted;
        vals[worst] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          const int idx = order[i];
          for (int d = 0; d < n; ++d) {
            pts[idx][d] = pts[best][d] + 0.5 * (pts[idx][d] - pts[best][d]);
          }
          vals[idx] = f(pts[idx]);
        }
      }
    }
  }
  int arg = 0;
  for (int i = 1; i <= n; ++i) {
    if (vals[i] < vals[arg]) arg = i;
  }
  x0 = pts[arg];
  return vals[arg];
}

int label_feature(PauliLabel l) {
  switch (l) {
    case PauliLabel::I: return 0;
    case PauliLabel::Z: return 1;
    case PauliLabel::X: return 2;
    case PauliLabel::Y: return 3;
  }
  throw std::logic_error("unreachable label");
}

}  // namespace

Operator16 witness_matrix(const WitnessSpec& spec,
                          const WitnessAmplitudes& amp) {
  Operator16 w = Operator16::Zero();
  for (const CompiledTerm& t : compile_terms(spec, amp)) {
    w += t.coefficient * pauli_string_matrix(PauliString4{t.labels});
  }
  return w;
}

double product_state_trace(const WitnessSpec& spec,
                           const WitnessAmplitudes& amp,
                           const ProductStateAngles& angles) {
  const auto terms = compile_terms(spec, amp);
  std::array<double, 8> x;
  for (int q = 0; q < 4; ++q) {
    x[q] = angles.theta[q];
    x[4 + q] = angles.phi[q];
  }
  return eval_compiled(terms, x);
}

double min_product_trace(const WitnessSpec& spec, const WitnessAmplitudes& amp,
                         const MinimizeOptions& options) {
  const auto terms = compile_terms(spec, amp);
  auto objective = [&terms](const std::array<double, 8>& x) {
    return eval_compiled(terms, x);
  };

  double best = objective({kPi / 2, kPi / 2, kPi / 2, kPi / 2, kPi / 4,
                           kPi / 4, kPi / 4, kPi / 4});

  auto refine_from = [&](std::array<double, 8> x0, double step) {
    best = std::min(best, nelder_mead(objective, x0, step, 500));
  };

  if (options.use_slice_grid) {
    // Grid over the two bracket-active qubits (the permutation images of the
    // first two tensor slots); the remaining qubits sit at theta = pi/2,
    // phi = pi/4.
    const auto sw = perm_swap_positions(spec.perm);
    auto image = [&sw](int q) {
      if (q == sw[0]) return sw[1];
      if (q == sw[1]) return sw[0];
      return q;
    };
    const int qa = image(0), qb = image(1);

    const int n_theta =
        std::max(2, static_cast<int>(std::lround(kPi / options.grid_step)) + 1);
    const int n_phi = std::max(
        2, static_cast<int>(std::lround(2.0 * kPi / options.grid_step)));
    const int axis_points = n_theta * n_phi;

    std::vector<double> thetas(n_theta), phis(n_phi);
    for (int i = 0; i < n_theta; ++i) thetas[i] = kPi * i / (n_theta - 1);
    for (int i = 0; i < n_phi; ++i) phis[i] = 2.0 * kPi * i / n_phi;

    Eigen::Matrix4d kernel = Eigen::Matrix4d::Zero();
    const double sqrt_half = std::sqrt(0.5);
    for (const CompiledTerm& t : terms) {
      double fixed = t.coefficient;
      for (int q = 0; q < 4; ++q) {
        if (q == qa || q == qb) continue;
        switch (t.labels[q]) {
          case PauliLabel::I: break;
          case PauliLabel::X: fixed *= sqrt_half; break;
          case PauliLabel::Y: fixed *= sqrt_half; break;
          case PauliLabel::Z: fixed = 0.0; break;
        }
      }
      kernel(label_feature(t.labels[qa]), label_feature(t.labels[qb])) += fixed;
    }

    Eigen::MatrixXd features(axis_points, 4);
    for (int ti = 0; ti < n_theta; ++ti) {
      const double st = std::sin(thetas[ti]), ct = std::cos(thetas[ti]);
      for (int pi_ = 0; pi_ < n_phi; ++pi_) {
        const int row = ti * n_phi + pi_;
        features(row, 0) = 1.0;
        features(row, 1) = ct;
        features(row, 2) = st * std::cos(phis[pi_]);
        features(row, 3) = st * std::sin(phis[pi_]);
      }
    }

    const Eigen::MatrixXd values =
        features * kernel * features.transpose();
    Eigen::Index ra = 0, rb = 0;
    values.minCoeff(&ra, &rb);

    std::array<double, 8> x0{kPi / 2, kPi / 2, kPi / 2, kPi / 2,
                             kPi / 4, kPi / 4, kPi / 4, kPi / 4};
    x0[qa] = thetas[static_cast<int>(ra) / n_phi];
    x0[4 + qa] = phis[static_cast<int>(ra) % n_phi];
    x0[qb] = thetas[static_cast<int>(rb) / n_phi];
    x0[4 + qb] = phis[static_cast<int>(rb) % n_phi];
    best = std::min(best, objective(x0));
    refine_from(x0, options.grid_step);
  }

  std::mt19937_64 rng(options.seed);
  for (int s = 0; s < options.multistarts; ++s) {
    std::array<double, 8> x0;
    for (int q = 0; q < 4; ++q) {
      x0[q] = kPi * uniform_unit(rng);
      x0[4 + q] = 2.0 * kPi * uniform_unit(rng);
    }
    refine_from(x0, 0.4);
  }
  return best;
}

double linear_trace(const WitnessSpec& spec, const ProbabilityVector& probs) {
  const CorrelationVector r = correlations_from_probs(probs);
  const WitnessAmplitudes amp =
      WitnessAmplitudes::from_mixing(spec.p, spec.psi1, spec.psi2);
  double acc =
      1.0 +
      spec.z_sign * r[correlation_index(apply_perm(spec.perm, spec.o_term))];
  const std::array<double, 4> brackets{amp.a1, amp.a2, amp.a3, amp.a4};
  for (int k = 0; k < 4; ++k) {
    const double internal = (spec.family[k] == 0) ? 1.0 : -1.0;
    const int k1 = correlation_index(
        apply_perm(spec.perm, parse_pauli_string(kBracketPairs[k][0])));
    const int k2 = correlation_index(
        apply_perm(spec.perm, parse_pauli_string(kBracketPairs[k][1])));
    acc += brackets[k] * (r[k1] + internal * r[k2]);
  }
  return acc;
}

namespace {

struct EnvelopeComponents {
  double c1, s1, c2, s2, zsum;
};

EnvelopeComponents envelope_components(const ProbabilityVector& v) {
  EnvelopeComponents e;
  e.c1 = v[10] - v[11] + v[12] - v[13];
  e.s1 = v[8] - v[9] - v[14] + v[15];
  e.c2 = v[2] - v[3] + v[4] - v[5];
  e.s2 = v[0] - v[1] - v[6] + v[7];
  double tail = 0.0;
  for (int j = 8; j < 16; ++j) tail += v[j];
  e.zsum = 1.0 - 2.0 * tail;
  return e;
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

StationaryAngles envelope_stationary_angles(const ProbabilityVector& probs) {
  validate_probs(probs);
  const EnvelopeComponents e = envelope_components(probs);
  StationaryAngles out;
  if (e.c1 != 0.0 || e.s1 != 0.0) out.psi1 = std::atan2(e.s1, e.c1);
  if (e.c2 != 0.0 || e.s2 != 0.0) out.psi2 = std::atan2(-e.s2, e.c2);
  return out;
}

SignSelectors quadrant_selectors(const StationaryAngles& angles, int a0) {
  auto rule = [](const std::optional<double>& psi) {
    if (!psi.has_value()) return 0;
    // The quadrant rule is 2*pi periodic; reduce into (-pi, pi] first.
    const double wrapped = std::remainder(*psi, 2.0 * kPi);
    return (std::abs(wrapped) <= kPi / 2.0) ? +1 : -1;
  };
  return SignSelectors{a0, rule(angles.psi1), rule(angles.psi2)};
}

double envelope_trace(const ProbabilityVector& probs, double p, int a0) {
  validate_probs(probs);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("envelope_trace: p outside [0, 1]");
  }
  if (a0 != 1 && a0 != -1) {
    throw std::invalid_argument("envelope_trace: a0 must be +1 or -1");
  }
  const EnvelopeComponents e = envelope_components(probs);
  double acc = 1.0 + a0 * e.zsum;
  if (e.c1 != 0.0) acc -= 4.0 * p * std::hypot(e.c1, e.s1);
  if (e.c2 != 0.0) acc -= 4.0 * (1.0 - p) * std::hypot(e.c2, e.s2);
  return acc;
}

double linear_family_min_trace(const ProbabilityVector& probs, double p,
                               int a0) {
  validate_probs(probs);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("linear_family_min_trace: p outside [0, 1]");
  }
  const EnvelopeComponents e = envelope_components(probs);
  return 1.0 + a0 * e.zsum - 4.0 * p * std::hypot(e.c1, e.s1) -
         4.0 * (1.0 - p) * std::hypot(e.c2, e.s2);
}

double envelope_trace_printed(const ProbabilityVector& probs, double p,
                              const SignSelectors& selectors) {
  validate_probs(probs);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("envelope_trace_printed: p outside [0, 1]");
  }
  const EnvelopeComponents e = envelope_components(probs);
  return 1.0 + selectors.a0 * e.zsum +
         4.0 * p * selectors.a1 * std::hypot(e.c1, e.s1) * sgn(e.c1) +
         4.0 * (1.0 - p) * selectors.a2 * std::hypot(e.c2, e.s2) * sgn(e.c2);
}

std::vector<ExampleCurvePoint> example_envelope_curve(
    const std::vector<double>& p1_grid) {
  const double lo = (9.0 - 5.0 * std::sqrt(2.0)) / 18.0;
  const double hi_lower = 7.0 / 9.0;
  const double hi_upper = 2.0 / 9.0;
  const double slack = 1e-12;

  std::vector<ExampleCurvePoint> out;
  out.reserve(p1_grid.size());
  for (double p1 : p1_grid) {
    const bool in_lower = p1 >= lo - slack && p1 <= hi_lower + slack;
    const bool in_upper = p1 >= lo - slack && p1 <= hi_upper + slack;
    if (!in_lower && !in_upper) {
      throw std::invalid_argument(
          "example_envelope_curve: p1 = " + std::to_string(p1) +
          " outside both branch intervals [" + std::to_string(lo) + ", " +
          std::to_string(hi_lower) + "] and [" + std::to_string(lo) + ", " +
          std::to_string(hi_upper) + "]");
    }
    const double radicand =
        std::max(0.0, 324.0 * p1 * (1.0 - p1) - 31.0);
    const double root = std::sqrt(radicand);
    ExampleCurvePoint pt;
    pt.p1 = p1;
    if (in_lower) pt.p2_lower = (9.0 - root) / 18.0;
    if (in_upper) pt.p2_upper = (9.0 + root) / 18.0;
    out.push_back(pt);
  }
  return out;
}

double envelope_tangent_line_p2(double p1, double psi2, double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument("envelope_tangent_line_p2: p outside [0, 1)");
  }
  const double r = 1.0 / (2.0 * (1.0 - p));
  const double c = std::cos(psi2), s = std::sin(psi2);
  const double denom = c - s;
  if (std::abs(denom) < 1e-14) {
    throw std::invalid_argument(
        "envelope_tangent_line_p2: line is vertical (cos psi2 = sin psi2)");
  }
  return (r + c - p1 * (c + s)) / denom;
}

ExampleCurvePoint envelope_zero_branches(double p1, double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::invalid_argument("envelope_zero_branches: p outside [0, 1)");
  }
  const double r = 1.0 / (2.0 * (1.0 - p));
  const double lo = (1.0 - r * std::sqrt(2.0)) / 2.0;
  const double hi_lower = (1.0 + r) / 2.0;
  const double hi_upper = (1.0 - r) / 2.0;
  const double slack = 1e-12;

  ExampleCurvePoint pt;
  pt.p1 = p1;
  const double radicand =
      std::max(0.0, 2.0 * r * r - 1.0 + 4.0 * p1 - 4.0 * p1 * p1);
  const double root = std::sqrt(radicand);
  if (p1 >= std::max(0.0, lo) - slack && p1 <= hi_lower + slack) {
    const double p2 = (1.0 - root) / 2.0;
    if (p2 >= -slack) pt.p2_lower = std::max(0.0, p2);
  }
  if (p1 >= std::max(0.0, lo) - slack && p1 <= hi_upper + slack) {
    const double p2 = (1.0 + root) / 2.0;
    if (p2 >= -slack && p1 + p2 <= 1.0 + slack) pt.p2_upper = p2;
  }
  return pt;
}

std::vector<WitnessSpec> enumerate_family(FamilyReading reading) {
  std::vector<WitnessSpec> out;
  const bool literal = (reading == FamilyReading::Literal);
  out.reserve(literal ? 320 : 336);
  for (const auto& family : kFamilyTuples) {
    for (int z_sign : {+1, -1}) {
      if (literal) {
        for (int slot = 0; slot < 8; ++slot) {
          for (QubitPerm perm : kAllPerms) {
            if (perm == QubitPerm::Identity) continue;
            WitnessSpec spec;
            spec.family = family;
            spec.z_sign = z_sign;
            spec.o_term = parse_pauli_string(kOTermSlots[slot]);
            spec.o_slot = slot + 1;
            spec.perm = perm;
            out.push_back(spec);
          }
        }
      } else {
        for (const char* o : kOTerms) {
          for (QubitPerm perm : kAllPerms) {
            WitnessSpec spec;
            spec.family = family;
            spec.z_sign = z_sign;
            spec.o_term = parse_pauli_string(o);
            spec.perm = perm;
            out.push_back(spec);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace bellwit
