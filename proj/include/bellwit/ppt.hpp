#pragma once

#include <array>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bellwit/bell.hpp"

namespace bellwit {

// Nonempty proper subset of the four qubits.  Bit 3 = qubit A (leftmost),
// bit 2 = B, bit 1 = C, bit 0 = D.
struct Bipartition {
  unsigned mask = 0;

  std::string name() const;
  static Bipartition from_name(std::string_view name);
  bool operator==(const Bipartition&) const = default;
};

// The seven canonical bipartitions (complements are spectrally equivalent
// and omitted): A, B, C, D, AB, AC, AD.
inline constexpr std::array<unsigned, 7> kCanonicalBipartitionMasks = {
    8, 4, 2, 1, 12, 10, 9};

inline constexpr std::array<const char*, 7> kCanonicalBipartitionNames = {
    "A", "B", "C", "D", "AB", "AC", "AD"};

// Per canonical bipartition, four quads of 1-based probability indices; each
// quad generates four inequalities.
inline constexpr std::array<std::array<std::array<int, 4>, 4>, 7> kPptQuads =
    {{
        {{{1, 2, 15, 16}, {3, 4, 13, 14}, {5, 6, 11, 12}, {7, 8, 9, 10}}},
        {{{1, 2, 9, 10}, {3, 4, 11, 12}, {5, 6, 13, 14}, {7, 8, 15, 16}}},
        {{{1, 2, 5, 6}, {3, 4, 7, 8}, {9, 10, 13, 14}, {11, 12, 15, 16}}},
        {{{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}, {13, 14, 15, 16}}},
        {{{1, 2, 7, 8}, {3, 4, 5, 6}, {9, 10, 15, 16}, {11, 12, 13, 14}}},
        {{{1, 2, 11, 12}, {3, 4, 9, 10}, {5, 6, 15, 16}, {7, 8, 13, 14}}},
        {{{1, 2, 13, 14}, {3, 4, 15, 16}, {5, 6, 9, 10}, {7, 8, 11, 12}}},
    }};

// The four sign patterns of each quad: one minus rotating from the last
// index to the first.
inline constexpr std::array<std::array<int, 4>, 4> kQuadSignPatterns = {{
    {+1, +1, +1, -1},
    {+1, +1, -1, +1},
    {+1, -1, +1, +1},
    {-1, +1, +1, +1},
}};

std::string pattern_string(const std::array<int, 4>& pattern);

// Transposes the tensor factors selected by `part`.
// Throws std::invalid_argument for the empty or full subset.
Operator16 partial_transpose(const Operator16& rho, Bipartition part);

struct InequalityViolation {
  int block = 0;         // 0..6 into the canonical bipartition list
  int quad = 0;          // 0..3 into kPptQuads[block]
  std::string pattern;   // e.g. "-+++"
  double residual = 0.0;
};

struct PptReport {
  bool is_ppt = false;
  double min_eigenvalue = 0.0;
  Bipartition worst_bipartition;
  std::vector<InequalityViolation> violated;
};

// All 112 residuals in block-major order (7 blocks x 4 quads x 4 patterns);
// nonnegative residual means the inequality is satisfied.
std::array<double, 112> ppt_inequalities(const ProbabilityVector& p);

bool is_ppt_inequalities(const ProbabilityVector& p, double tol = 1e-10);

// Spectral classification over the seven canonical partial transposes,
// with the closed-form violations listed alongside.
PptReport is_ppt_spectral(const ProbabilityVector& p, double tol = 1e-10);

struct RegionBoundsReport {
  double val_8p1_minus_6p2 = 0.0;  // must be <= 1
  double val_8p2_minus_6p1 = 0.0;  // must be <= 1
  double val_p1_plus_p3 = 0.0;     // must be <= 1/2
  bool ok_8p1_minus_6p2 = false;
  bool ok_8p2_minus_6p1 = false;
  bool ok_p1_plus_p3 = false;

  bool all_satisfied() const {
    return ok_8p1_minus_6p2 && ok_8p2_minus_6p1 && ok_p1_plus_p3;
  }
};

// Three necessary conditions implied by the 112 inequalities.
RegionBoundsReport derived_region_checks(const ProbabilityVector& p);

// Zeroes the chosen pair (p_{2k-1}, p_{2k}) and gives every remaining pair
// equal halves of its (normalized) weight.  The resulting states are treated
// as certified-separable: separability is taken as established by the
// construction source, and this library verifies PPT membership and witness
// nonnegativity only.  zeroed_pair runs 1..8; weights are the seven
// remaining pairs in index order.  Throws std::invalid_argument for negative
// weights or an all-zero weight vector.
ProbabilityVector separable_family_state(int zeroed_pair,
                                         const std::array<double, 7>& weights);

enum class CaseFamily { Case1, Case2 };

struct CaseFamilyParams {
  // Case 2 free parameter in [0, 1/2]; must stay 0 for case 1.
  double p4 = 0.0;
  // Fraction of each remaining pair's forced sum assigned to its odd index,
  // pairs (p5,p6), (p7,p8), ..., (p15,p16) in order; each in [0, 1].
  std::array<double, 6> pair_splits{0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
};

// Boundary states of the feasible region:
//   case 1: p1 = p3 = 1/8, p2 = p4 = 0, remaining six pairs sum to 1/8 each;
//   case 2: p2 = 0, p1 = 1/8 - p4/4, p3 = 3 p4/4 + 1/8, remaining six pairs
//           sum to p1 each.
// Throws std::invalid_argument when params violate the case's constraints.
ProbabilityVector case_family_state(CaseFamily which,
                                    const CaseFamilyParams& params);

ProbabilityVector case1_family_state(const std::array<double, 6>& pair_splits);
ProbabilityVector case2_family_state(double p4,
                                     const std::array<double, 6>& pair_splits);

// Uniform simplex sample projected onto a random inequality hyperplane
// within the sum-preserving subspace, then clamped and renormalized.
ProbabilityVector sample_near_boundary(std::mt19937_64& rng);

}  // namespace bellwit
