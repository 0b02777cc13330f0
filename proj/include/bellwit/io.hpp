#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellwit/bell.hpp"
#include "bellwit/ppt.hpp"
#include "bellwit/witness.hpp"

namespace bellwit {

// Numbers cross the process boundary with 12 significant digits.
std::string format_sig12(double v);

// The double nearest the 12-significant-digit decimal rendering of v.
double round_sig12(double v);

// Sixteen weights from either a JSON array of 16 numbers or one CSV line of
// 16 comma-separated fields ('#' comment lines and blank lines skipped).
// Throws std::runtime_error with a position-annotated message.
ProbabilityVector parse_probs_text(const std::string& text);
ProbabilityVector read_probs_file(const std::string& path);

// Term file: one "<real coefficient> <4-char Pauli word>" per line,
// '#' comments and blank lines allowed.  Errors carry line numbers.
std::vector<PauliTerm> parse_pauli_terms_text(const std::string& text);
std::vector<PauliTerm> read_pauli_terms_file(const std::string& path);

// UTF-8 JSON with fields is_ppt, min_eigenvalue, worst_bipartition,
// violated: [{block, quad, pattern, residual}]; quads use 1-based indices.
std::string ppt_report_to_json(const PptReport& report);

// JSON with fields p, psi1, psi2, z_sign, family, o_term, perm, id.
std::string witness_spec_to_json(const WitnessSpec& spec);

// EW_SEED environment variable when set to a valid unsigned integer,
// otherwise the fixed fallback.
std::uint64_t default_seed(std::uint64_t fallback = 20260825);

}  // namespace bellwit
