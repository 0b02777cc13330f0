#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellwit/bell.hpp"

namespace bellwit {

// Transpositions of two tensor factors (1-based qubit positions in names).
enum class QubitPerm { Identity, Swap12, Swap13, Swap14, Swap23, Swap34 };

inline constexpr std::array<QubitPerm, 6> kAllPerms = {
    QubitPerm::Identity, QubitPerm::Swap12, QubitPerm::Swap13,
    QubitPerm::Swap14,   QubitPerm::Swap23, QubitPerm::Swap34};

// Short stable tokens used inside witness identifiers.
const char* perm_token(QubitPerm perm);

// Positions swapped by the transposition (0-based); Identity -> {0, 0}.
std::array<int, 2> perm_swap_positions(QubitPerm perm);

PauliString4 apply_perm(QubitPerm perm, const PauliString4& ps);

// Bracket-coefficient amplitudes.  The positivity normalization ties the
// identity and z-term weights to the bracket weights:
//   a0 = b0 = sqrt(h1^2 + h4^2) + sqrt(h2^2 + h3^2),
// with h1 = (a1+a2)/2, h2 = (a1-a2)/2, h3 = (a3+a4)/2, h4 = (a3-a4)/2.
// The identity-only degenerate form {a0 > 0, b0 = a1..a4 = 0} is also
// accepted (constant witness).
struct WitnessAmplitudes {
  double a0 = 1.0;
  double b0 = 1.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;

  double h1() const { return (a1 + a2) / 2.0; }
  double h2() const { return (a1 - a2) / 2.0; }
  double h3() const { return (a3 + a4) / 2.0; }
  double h4() const { return (a3 - a4) / 2.0; }

  // Largest violation of the normalization ties, scaled by max(1, |a0|).
  double normalization_defect() const;
  // Throws std::invalid_argument when the defect exceeds 1e-12 and the
  // amplitudes are not the identity-only degenerate form.
  void validate() const;

  // Normalized amplitudes (a0 = b0 = 1) from the mixing parametrization:
  //   a1 = p cos(psi1) + (1-p) cos(psi2),  a2 = p cos(psi1) - (1-p) cos(psi2),
  //   a3 = p sin(psi1) + (1-p) sin(psi2),  a4 = -p sin(psi1) + (1-p) sin(psi2).
  static WitnessAmplitudes from_mixing(double p, double psi1, double psi2);
  static WitnessAmplitudes identity_only();
};

// The four allowed internal-sign tuples of the bracket pairs.
inline constexpr std::array<std::array<int, 4>, 4> kFamilyTuples = {{
    {0, 0, 0, 0},
    {0, 0, 1, 1},
    {1, 1, 0, 0},
    {1, 1, 1, 1},
}};

// The seven distinct diagonal z-words admissible as the witness z-term.
inline constexpr std::array<const char*, 7> kOTerms = {
    "ZZII", "IIZZ", "IZIZ", "IZZI", "ZIZI", "ZIIZ", "ZZZZ"};

// The raw printed z-word list carries a repeated entry at slot 5; the
// literal family reading enumerates these eight slots verbatim.
inline constexpr std::array<const char*, 8> kOTermSlots = {
    "ZZII", "IIZZ", "IZIZ", "IZZI", "ZZII", "ZIZI", "ZIIZ", "ZZZZ"};

// The four bracket pairs; bracket k couples amplitude a_{k+1} with
// [first + (-1)^{family[k]} second].
inline constexpr std::array<std::array<const char*, 2>, 4> kBracketPairs = {{
    {"XXXX", "XXYY"},
    {"YYXX", "YYYY"},
    {"XYYX", "XYXY"},
    {"YXYX", "YXXY"},
}};

struct WitnessSpec {
  double p = 0.5;       // mixing weight in [0, 1]
  double psi1 = 0.0;
  double psi2 = 0.0;
  int z_sign = +1;      // sign of the z-term
  std::array<int, 4> family{0, 0, 0, 0};
  PauliString4 o_term{
      {PauliLabel::Z, PauliLabel::Z, PauliLabel::I, PauliLabel::I}};
  QubitPerm perm = QubitPerm::Identity;
  // Literal-reading slot (1..8) carried for identifier stability; 0 when the
  // spec comes from the deduplicated reading.
  int o_slot = 0;

  std::string id() const;
};

// W = IIII + z_sign (b0/a0) perm(o_term)
//       + sum_k (a_k/a0) [perm(pair_k.first) + (-1)^{family_k} perm(pair_k.second)].
// Hermitian with trace 16.  Throws std::invalid_argument when amp violates
// the normalization invariant.
Operator16 witness_matrix(const WitnessSpec& spec, const WitnessAmplitudes& amp);

struct ProductStateAngles {
  std::array<double, 4> theta{0.0, 0.0, 0.0, 0.0};  // polar, [0, pi]
  std::array<double, 4> phi{0.0, 0.0, 0.0, 0.0};    // azimuthal, [0, 2*pi)
};

// Tr(W rho_product) / a0 via the closed trigonometric form: every Pauli word
// contributes the product of single-qubit Bloch components
// (I -> 1, X -> sin t cos f, Y -> sin t sin f, Z -> cos t).
double product_state_trace(const WitnessSpec& spec, const WitnessAmplitudes& amp,
                           const ProductStateAngles& angles);

struct MinimizeOptions {
  int multistarts = 64;
  bool use_slice_grid = true;
  double grid_step = 0.1308996938995747;  // pi/24
  std::uint64_t seed = 20260825;
};

// Numerical minimum of product_state_trace over all eight angles: a coarse
// grid over the two bracket-active qubits (the permutation images of the
// first two tensor slots, the other two held at theta = pi/2, phi = pi/4),
// then Nelder-Mead refinement from the best grid cell and from random
// multistarts.
double min_product_trace(const WitnessSpec& spec, const WitnessAmplitudes& amp,
                         const MinimizeOptions& options = {});

// Tr(W rho) for the Bell-diagonal state with the given weights, via the
// correlation closed form; amplitudes derive from (p, psi1, psi2).
double linear_trace(const WitnessSpec& spec, const ProbabilityVector& probs);

struct StationaryAngles {
  std::optional<double> psi1;  // empty when both ratio components vanish
  std::optional<double> psi2;
};

// Quadrant-aware stationary angles of the linear trace:
//   psi1 = atan2(p9-p10-p15+p16, p11-p12+p13-p14)
//   psi2 = atan2(-p1+p2+p7-p8,  p3-p4+p5-p6)
StationaryAngles envelope_stationary_angles(const ProbabilityVector& probs);

struct SignSelectors {
  int a0 = +1;  // in {-1, +1}
  int a1 = +1;  // in {-1, 0, +1}; 0 only via the sgn(0) convention
  int a2 = +1;
};

// Selector values implied by the quadrant rule at the given angles
// (+1 when psi lies within pi/2 of an even multiple of pi, -1 otherwise,
// 0 for a degenerate angle).
SignSelectors quadrant_selectors(const StationaryAngles& angles, int a0 = +1);

// Envelope of the linear family over (psi1, psi2) with the
// detection-maximizing selectors:
//   1 + a0 (1 - 2 sum_{j>=9} p_j) - 4 p   hypot(C1, S1) [if C1 != 0]
//                                 - 4(1-p) hypot(C2, S2) [if C2 != 0]
// where C1 = p11-p12+p13-p14, S1 = p9-p10-p15+p16, C2 = p3-p4+p5-p6,
// S2 = p1-p2-p7+p8.  A radical is dropped exactly when its C-component is 0
// (the sgn(0) = 0 convention).
double envelope_trace(const ProbabilityVector& probs, double p, int a0);

// The same expression with free sign selectors:
//   1 + a0 zsum + 4 p a1 hypot(C1,S1) sgn(C1) + 4(1-p) a2 hypot(C2,S2) sgn(C2).
double envelope_trace_printed(const ProbabilityVector& probs, double p,
                              const SignSelectors& selectors);

// Pointwise minimum of the linear family over both angles,
//   1 + a0 zsum - 4 p hypot(C1,S1) - 4(1-p) hypot(C2,S2),
// with both radicals always subtracted (no sgn(0) drop).  Differs from
// envelope_trace only where a C-component vanishes while its S-component
// does not.
double linear_family_min_trace(const ProbabilityVector& probs, double p,
                               int a0);

struct ExampleCurvePoint {
  double p1 = 0.0;
  std::optional<double> p2_lower;  // branch (9 - sqrt(324 p1 (1-p1) - 31))/18
  std::optional<double> p2_upper;  // branch (9 + sqrt(...))/18
};

// Zero locus of the envelope on the worked slice p = 1/10, a0 = +1,
// p3 = 1 - p1 - p2, p_i = 0 for i >= 4.  Lower branch valid on
// [(9-5 sqrt 2)/18, 7/9], upper branch on [(9-5 sqrt 2)/18, 2/9].
// Throws std::invalid_argument when p1 lies outside both intervals.
std::vector<ExampleCurvePoint> example_envelope_curve(
    const std::vector<double>& p1_grid);

// One member of the linear family on the worked slice: the p2 at which the
// linear trace vanishes for the given p1 and psi2, with general mixing
// weight p (radius parameter R = 1/(2(1-p))):
//   p2 = (R + cos psi2 - p1 (cos psi2 + sin psi2)) / (cos psi2 - sin psi2).
double envelope_tangent_line_p2(double p1, double psi2, double p);

// General-p zero-locus branches on the slice (R = 1/(2(1-p))):
//   p2 = (1 -+ sqrt(2 R^2 - 1 + 4 p1 - 4 p1^2)) / 2,
// lower valid for p1 in [(1 - R sqrt 2)/2, (1+R)/2], upper for
// p1 in [(1 - R sqrt 2)/2, (1-R)/2].
ExampleCurvePoint envelope_zero_branches(double p1, double p);

enum class FamilyReading { Deduplicated, Literal };

// Deduplicated: 4 families x 2 z-signs x 7 distinct z-words x 6 perms = 336.
// Literal: 4 x 2 x 8 printed z-word slots x 5 nontrivial perms = 320.
// Deterministic lexicographic order; continuous parameters left at defaults.
std::vector<WitnessSpec> enumerate_family(
    FamilyReading reading = FamilyReading::Deduplicated);

}  // namespace bellwit
