#include "bellwit/ppt.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bellwit {

std::string Bipartition::name() const {
  if (mask == 0 || mask >= 16) {
    throw std::invalid_argument("Bipartition: mask outside 1..15");
  }
  std::string s;
  for (int q = 0; q < 4; ++q) {
    if (mask & (8u >> q)) s += static_cast<char>('A' + q);
  }
  return s;
}

Bipartition Bipartition::from_name(std::string_view name) {
  if (name.empty() || name.size() > 4) {
    throw std::invalid_argument("Bipartition: bad name");
  }
  unsigned mask = 0;
  for (char c : name) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u < 'A' || u > 'D') {
      throw std::invalid_argument(std::string("Bipartition: bad qubit '") + c +
                                  "'");
    }
    const unsigned bit = 8u >> (u - 'A');
    if (mask & bit) {
      throw std::invalid_argument("Bipartition: repeated qubit in name");
    }
    mask |= bit;
  }
  return Bipartition{mask};
}

std::string pattern_string(const std::array<int, 4>& pattern) {
  std::string s;
  for (int v : pattern) s += (v > 0) ? '+' : '-';
  return s;
}

Operator16 partial_transpose(const Operator16& rho, Bipartition part) {
  const unsigned m = part.mask;
  if (m == 0 || m >= 15) {
    throw std::invalid_argument(
        "partial_transpose: subset must be nonempty and proper");
  }
  Operator16 out;
  for (unsigned r = 0; r < 16; ++r) {
    for (unsigned c = 0; c < 16; ++c) {
      out(r, c) = rho((r & ~m) | (c & m), (c & ~m) | (r & m));
    }
  }
  return out;
}

std::array<double, 112> ppt_inequalities(const ProbabilityVector& p) {
  validate_probs(p);
  std::array<double, 112> residuals{};
  int idx = 0;
  for (int block = 0; block < 7; ++block) {
    for (int quad = 0; quad < 4; ++quad) {
      const auto& q = kPptQuads[block][quad];
      for (const auto& pattern : kQuadSignPatterns) {
        double acc = 0.0;
        for (int t = 0; t < 4; ++t) acc += pattern[t] * p[q[t] - 1];
        residuals[idx++] = acc;
      }
    }
  }
  return residuals;
}

bool is_ppt_inequalities(const ProbabilityVector& p, double tol) {
  const auto residuals = ppt_inequalities(p);
  return std::all_of(residuals.begin(), residuals.end(),
                     [tol](double r) { return r >= -tol; });
}

PptReport is_ppt_spectral(const ProbabilityVector& p, double tol) {
  validate_probs(p);
  const Operator16 rho = density_from_probs(p);

  PptReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int block = 0; block < 7; ++block) {
    const Bipartition part{kCanonicalBipartitionMasks[block]};
    const auto evals = hermitian_eigenvalues(partial_transpose(rho, part));
    if (evals[0] < report.min_eigenvalue) {
      report.min_eigenvalue = evals[0];
      report.worst_bipartition = part;
    }
  }
  report.is_ppt = report.min_eigenvalue >= -tol;

  // The closed-form residuals equal twice the partial-transpose eigenvalues,
  // so the matched violation threshold is 2*tol.
  const auto residuals = ppt_inequalities(p);
  int idx = 0;
  for (int block = 0; block < 7; ++block) {
    for (int quad = 0; quad < 4; ++quad) {
      for (int pat = 0; pat < 4; ++pat, ++idx) {
        if (residuals[idx] < -2.0 * tol) {
          report.violated.push_back(InequalityViolation{
              block, quad, pattern_string(kQuadSignPatterns[pat]),
              residuals[idx]});
        }
      }
    }
  }
  return report;
}

RegionBoundsReport derived_region_checks(const ProbabilityVector& p) {
  validate_probs(p);
  RegionBoundsReport r;
  r.val_8p1_minus_6p2 = 8.0 * p[0] - 6.0 * p[1];
  r.val_8p2_minus_6p1 = 8.0 * p[1] - 6.0 * p[0];
  r.val_p1_plus_p3 = p[0] + p[2];
  const double tol = 1e-12;
  r.ok_8p1_minus_6p2 = r.val_8p1_minus_6p2 <= 1.0 + tol;
  r.ok_8p2_minus_6p1 = r.val_8p2_minus_6p1 <= 1.0 + tol;
  r.ok_p1_plus_p3 = r.val_p1_plus_p3 <= 0.5 + tol;
  return r;
}

ProbabilityVector separable_family_state(
    int zeroed_pair, const std::array<double, 7>& weights) {
  if (zeroed_pair < 1 || zeroed_pair > 8) {
    throw std::invalid_argument(
        "separable_family_state: zeroed_pair outside 1..8");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument(
          "separable_family_state: weights must be nonnegative");
    }
    total += w;
  }
  if (total <= 0.0) {
    throw std::invalid_argument(
        "separable_family_state: weights sum to zero; cannot normalize");
  }

  ProbabilityVector p{};
  int w = 0;
  for (int pair = 1; pair <= 8; ++pair) {
    if (pair == zeroed_pair) continue;
    const double half = weights[w++] / total / 2.0;
    p[2 * pair - 2] = half;
    p[2 * pair - 1] = half;
  }
  return p;
}

namespace {

ProbabilityVector assemble_case_state(double p1, double p2, double p3,
                                      double p4, double pair_sum,
                                      const std::array<double, 6>& splits) {
  ProbabilityVector p{};
  p[0] = p1;
  p[1] = p2;
  p[2] = p3;
  p[3] = p4;
  for (int k = 0; k < 6; ++k) {
    if (splits[k] < 0.0 || splits[k] > 1.0) {
      throw std::invalid_argument("case_family_state: pair split " +
                                  std::to_string(k + 1) + " outside [0, 1]");
    }
    p[4 + 2 * k] = pair_sum * splits[k];
    p[5 + 2 * k] = pair_sum * (1.0 - splits[k]);
  }
  return p;
}

}  // namespace

ProbabilityVector case1_family_state(const std::array<double, 6>& pair_splits) {
  return assemble_case_state(0.125, 0.0, 0.125, 0.0, 0.125, pair_splits);
}

ProbabilityVector case2_family_state(double p4,
                                     const std::array<double, 6>& pair_splits) {
  if (!(p4 >= 0.0 && p4 <= 0.5)) {
    throw std::invalid_argument("case_family_state: p4 outside [0, 1/2]");
  }
  const double p1 = 0.125 - p4 / 4.0;
  const double p3 = 0.75 * p4 + 0.125;
  return assemble_case_state(p1, 0.0, p3, p4, p1, pair_splits);
}

ProbabilityVector case_family_state(CaseFamily which,
                                    const CaseFamilyParams& params) {
  switch (which) {
    case CaseFamily::Case1:
      if (params.p4 != 0.0) {
        throw std::invalid_argument("case_family_state: case 1 requires p4 = 0");
      }
      return case1_family_state(params.pair_splits);
    case CaseFamily::Case2:
      return case2_family_state(params.p4, params.pair_splits);
  }
  throw std::logic_error("unreachable case family");
}

ProbabilityVector sample_near_boundary(std::mt19937_64& rng) {
  ProbabilityVector p = sample_simplex(rng);

  // Pick one of the 112 inequalities uniformly.
  const unsigned pick = static_cast<unsigned>(rng() % 112);
  const int block = static_cast<int>(pick / 16);
  const int quad = static_cast<int>((pick / 4) % 4);
  const int pat = static_cast<int>(pick % 4);

  std::array<double, 16> c{};
  const auto& q = kPptQuads[block][quad];
  for (int t = 0; t < 4; ++t) c[q[t] - 1] = kQuadSignPatterns[pat][t];

  // Project onto {c.p = 0} inside the sum-preserving subspace.  With d the
  // mean-free part of c, <c, d> = 4 - 16*(mean c)^2 = 3.75 for every pattern.
  double residual = 0.0;
  for (int i = 0; i < 16; ++i) residual += c[i] * p[i];
  const double mean_c = 2.0 / 16.0;  // each pattern sums to +2
  for (int i = 0; i < 16; ++i) {
    p[i] -= residual / 3.75 * (c[i] - mean_c);
  }

  double sum = 0.0;
  for (int i = 0; i < 16; ++i) {
    p[i] = std::max(p[i], 0.0);
    sum += p[i];
  }
  for (int i = 0; i < 16; ++i) p[i] /= sum;
  return p;
}

}  // namespace bellwit
