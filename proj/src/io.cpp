#include "bellwit/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bellwit {

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double round_sig12(double v) {
  return std::strtod(format_sig12(v).c_str(), nullptr);
}

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& field, const std::string& where) {
  const std::string t = trim(field);
  if (t.empty()) {
    throw std::runtime_error(where + ": empty numeric field");
  }
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw std::runtime_error(where + ": cannot parse number '" + t + "'");
  }
  return v;
}

}  // namespace

ProbabilityVector parse_probs_text(const std::string& text) {
  // JSON array form.
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array()) {
      throw std::runtime_error("probability input: malformed JSON array");
    }
    if (j.size() != 16) {
      throw std::runtime_error("probability input: expected 16 numbers, got " +
                               std::to_string(j.size()));
    }
    ProbabilityVector p{};
    for (int i = 0; i < 16; ++i) {
      if (!j[i].is_number()) {
        throw std::runtime_error("probability input: element " +
                                 std::to_string(i + 1) + " is not a number");
      }
      p[i] = j[i].get<double>();
    }
    return p;
  }

  // One CSV line of 16 fields.
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 16) {
      throw std::runtime_error(
          "probability input line " + std::to_string(line_no) +
          ": expected 16 comma-separated numbers, got " +
          std::to_string(fields.size()));
    }
    ProbabilityVector p{};
    for (int i = 0; i < 16; ++i) {
      p[i] = parse_number(fields[i], "probability input line " +
                                         std::to_string(line_no) + ", field " +
                                         std::to_string(i + 1));
    }
    return p;
  }
  throw std::runtime_error("probability input: no data line found");
}

ProbabilityVector read_probs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_probs_text(buf.str());
}

std::vector<PauliTerm> parse_pauli_terms_text(const std::string& text) {
  std::vector<PauliTerm> terms;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;

    std::istringstream ls(t);
    std::string coeff_text, word_text, extra;
    if (!(ls >> coeff_text >> word_text)) {
      throw std::runtime_error(
          "term file line " + std::to_string(line_no) +
          ": expected '<coefficient> <4-char Pauli word>'");
    }
    if (ls >> extra) {
      throw std::runtime_error("term file line " + std::to_string(line_no) +
                               ": unexpected trailing field '" + extra + "'");
    }
    PauliTerm term;
    term.coefficient =
        parse_number(coeff_text, "term file line " + std::to_string(line_no));
    try {
      term.word = parse_pauli_string(word_text);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("term file line " + std::to_string(line_no) +
                               ": " + e.what());
    }
    terms.push_back(term);
  }
  return terms;
}

std::vector<PauliTerm> read_pauli_terms_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pauli_terms_text(buf.str());
}

std::string ppt_report_to_json(const PptReport& report) {
  nlohmann::json j;
  j["is_ppt"] = report.is_ppt;
  j["min_eigenvalue"] = round_sig12(report.min_eigenvalue);
  j["worst_bipartition"] = report.worst_bipartition.name();
  nlohmann::json violated = nlohmann::json::array();
  for (const InequalityViolation& v : report.violated) {
    nlohmann::json item;
    item["block"] = kCanonicalBipartitionNames[v.block];
    item["quad"] = kPptQuads[v.block][v.quad];
    item["pattern"] = v.pattern;
    item["residual"] = round_sig12(v.residual);
    violated.push_back(item);
  }
  j["violated"] = violated;
  return j.dump();
}

std::string witness_spec_to_json(const WitnessSpec& spec) {
  nlohmann::json j;
  j["p"] = round_sig12(spec.p);
  j["psi1"] = round_sig12(spec.psi1);
  j["psi2"] = round_sig12(spec.psi2);
  j["z_sign"] = spec.z_sign;
  j["family"] = spec.family;
  j["o_term"] = spec.o_term.str();
  j["perm"] = perm_token(spec.perm);
  j["id"] = spec.id();
  return j.dump();
}

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("EW_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') return fallback;
  return static_cast<std::uint64_t>(v);
}

}  // namespace bellwit
