#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "bellwit/pauli.hpp"

namespace bellwit {

// Sixteen mixing weights p1..p16, stored 0-based (p[0] holds p1).
using ProbabilityVector = std::array<double, 16>;

// Fifteen correlation coefficients r1..r15, stored 0-based.
using CorrelationVector = std::array<double, 15>;

// Sixteen eigen-energies E1..E16, stored 0-based (units with k_B = 1).
using EnergySpectrum = std::array<double, 16>;

// Pauli words carrying the correlation coefficients, in contract order:
// r1..r15 pair with these strings index-for-index.
inline constexpr std::array<const char*, 15> kCorrelationStrings = {
    "IZZI", "IZIZ", "IIZZ", "ZIIZ", "ZIZI", "ZZII", "ZZZZ", "XXXX",
    "XYYX", "XYXY", "XXYY", "YXYX", "YXXY", "YYXX", "YYYY"};

// kSignTable[k][i-1] is the sign of p_i inside r_{k+1}.
inline constexpr std::array<std::array<int, 16>, 15> kSignTable = {{
    {+1, +1, +1, +1, -1, -1, -1, -1, -1, -1, -1, -1, +1, +1, +1, +1},
    {+1, +1, -1, -1, +1, +1, -1, -1, -1, -1, +1, +1, -1, -1, +1, +1},
    {+1, +1, -1, -1, -1, -1, +1, +1, +1, +1, -1, -1, -1, -1, +1, +1},
    {+1, +1, -1, -1, +1, +1, -1, -1, +1, +1, -1, -1, +1, +1, -1, -1},
    {+1, +1, +1, +1, -1, -1, -1, -1, +1, +1, +1, +1, -1, -1, -1, -1},
    {+1, +1, +1, +1, +1, +1, +1, +1, -1, -1, -1, -1, -1, -1, -1, -1},
    {+1, +1, -1, -1, -1, -1, +1, +1, -1, -1, +1, +1, +1, +1, -1, -1},
    {+1, -1, +1, -1, +1, -1, +1, -1, +1, -1, +1, -1, +1, -1, +1, -1},
    {-1, +1, -1, +1, +1, -1, +1, -1, +1, -1, +1, -1, -1, +1, -1, +1},
    {-1, +1, +1, -1, -1, +1, +1, -1, +1, -1, -1, +1, +1, -1, -1, +1},
    {-1, +1, +1, -1, +1, -1, -1, +1, -1, +1, +1, -1, +1, -1, -1, +1},
    {-1, +1, -1, +1, +1, -1, +1, -1, -1, +1, -1, +1, +1, -1, +1, -1},
    {-1, +1, +1, -1, -1, +1, +1, -1, -1, +1, +1, -1, -1, +1, +1, -1},
    {-1, +1, -1, +1, -1, +1, -1, +1, +1, -1, +1, -1, +1, -1, +1, -1},
    {+1, -1, -1, +1, -1, +1, +1, -1, -1, +1, +1, -1, +1, -1, -1, +1},
}};

// Throws std::invalid_argument when a component is below -1e-12 or the sum
// deviates from 1 by more than 1e-9.
void validate_probs(const ProbabilityVector& p);

// i runs 1..16.  The vector has exactly two nonzero amplitudes +-1/sqrt(2):
// odd i carries (+,+), even i carries (+,-).
Vector16 bell_basis_vector(int i);

// rho = sum_i p_i |psi_i><psi_i|.
Operator16 density_from_probs(const ProbabilityVector& p);

// Signed sums of probabilities per kSignTable.
CorrelationVector correlations_from_probs(const ProbabilityVector& p);

// r_k = Tr(rho * P_k) with P_k from kCorrelationStrings.
// Throws std::invalid_argument for non-Hermitian input.
CorrelationVector correlations_via_trace(const Operator16& rho);

// Inverse of correlations_from_probs (the sign table is orthogonal up to
// scale): p_i = (1 + sum_k r_k * sign[k][i]) / 16.
ProbabilityVector probs_from_correlations(const CorrelationVector& r);

// Boltzmann weights p_i = exp(-E_i/T)/Z, computed after subtracting min E_i.
// Throws std::invalid_argument for T <= 0 or non-finite energies.
ProbabilityVector energies_to_probs(const EnergySpectrum& energies,
                                    double temperature);

struct PauliTerm {
  double coefficient = 0.0;
  PauliString4 word;
};

// Builds H = sum coeff * P (duplicate words merged by summation), checks H is
// diagonal in the generalized Bell basis to 1e-10, and returns the sixteen
// diagonal expectation values.  Throws std::invalid_argument naming the
// offending (i, j) pair when an off-diagonal element survives.
EnergySpectrum pauli_terms_to_energies(const std::vector<PauliTerm>& terms);

// Deterministic uniform double in [0, 1); bit-stable across platforms.
double uniform_unit(std::mt19937_64& rng);

// Uniform sample from the 15-simplex: gaps of 15 sorted uniforms.
ProbabilityVector sample_simplex(std::mt19937_64& rng);

}  // namespace bellwit
