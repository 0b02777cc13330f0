#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellwit/bell.hpp"
#include "bellwit/io.hpp"
#include "bellwit/ppt.hpp"
#include "bellwit/thermal.hpp"
#include "bellwit/witness.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

// 2 = usage/input error, 1 = detection/violation, 0 = clean.
constexpr int kExitClean = 0;
constexpr int kExitDetection = 1;
constexpr int kExitInputError = 2;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw std::runtime_error("cannot open output file '" + path + "'");
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double v) { return bellwit::format_sig12(v); }

const char* bool_text(bool b) { return b ? "true" : "false"; }

struct PptConfig {
  std::string probs_path;
  std::string out_path;
};

int run_ppt(const PptConfig& cfg) {
  const bellwit::ProbabilityVector p = bellwit::read_probs_file(cfg.probs_path);
  const bellwit::PptReport report = bellwit::is_ppt_spectral(p);
  Output out(cfg.out_path);
  out.stream() << bellwit::ppt_report_to_json(report) << "\n";
  return report.is_ppt ? kExitClean : kExitDetection;
}

struct EnvelopeConfig {
  double p1_min = (9.0 - 5.0 * std::sqrt(2.0)) / 18.0;
  double p1_max = 7.0 / 9.0;
  int steps = 400;
  double p = 0.1;
  int a0 = +1;
  int linear_family = 50;
  std::string out_path;
};

int run_envelope(const EnvelopeConfig& cfg) {
  if (cfg.steps < 1 || cfg.p1_min > cfg.p1_max) {
    throw std::runtime_error("envelope: need steps >= 1 and p1-min <= p1-max");
  }
  // The sweep must start inside the zero locus.
  if (!bellwit::envelope_zero_branches(cfg.p1_min, cfg.p).p2_lower &&
      !bellwit::envelope_zero_branches(cfg.p1_min, cfg.p).p2_upper) {
    throw std::runtime_error("envelope: p1-min lies outside the zero locus");
  }
  if (!bellwit::envelope_zero_branches(cfg.p1_max, cfg.p).p2_lower &&
      !bellwit::envelope_zero_branches(cfg.p1_max, cfg.p).p2_upper) {
    throw std::runtime_error("envelope: p1-max lies outside the zero locus");
  }

  std::vector<double> grid(cfg.steps);
  for (int k = 0; k < cfg.steps; ++k) {
    grid[k] = (cfg.steps == 1)
                  ? cfg.p1_min
                  : cfg.p1_min + (cfg.p1_max - cfg.p1_min) * k / (cfg.steps - 1);
  }

  const double nan = std::nan("");
  Output out(cfg.out_path);
  std::ostream& os = out.stream();
  os << "p1,p2_lower,p2_upper,trace_on_curve\n";
  for (double p1 : grid) {
    const bellwit::ExampleCurvePoint pt =
        bellwit::envelope_zero_branches(p1, cfg.p);
    double worst_trace = 0.0;
    bool have_any = false;
    for (const std::optional<double>& p2 :
         {pt.p2_lower, pt.p2_upper}) {
      if (!p2.has_value()) continue;
      bellwit::ProbabilityVector probs{};
      probs[0] = p1;
      probs[1] = *p2;
      probs[2] = std::max(0.0, 1.0 - p1 - *p2);
      const double tr = bellwit::linear_family_min_trace(probs, cfg.p, cfg.a0);
      if (!have_any || std::abs(tr) > std::abs(worst_trace)) worst_trace = tr;
      have_any = true;
    }
    os << fmt(p1) << ',' << fmt(pt.p2_lower.value_or(nan)) << ','
       << fmt(pt.p2_upper.value_or(nan)) << ','
       << (have_any ? fmt(worst_trace) : "nan") << "\n";
  }

  if (cfg.linear_family > 0) {
    const std::string path = cfg.out_path.empty()
                                 ? std::string("envelope_linear.csv")
                                 : cfg.out_path + ".linear.csv";
    std::ofstream lf(path);
    if (!lf) {
      throw std::runtime_error("cannot open output file '" + path + "'");
    }
    lf << "psi2,p1,p2\n";
    for (int k = 0; k < cfg.linear_family; ++k) {
      const double psi2 = kPi / 2.0 + k * kPi / cfg.linear_family;
      bool vertical = false;
      for (double p1 : grid) {
        try {
          const double p2 = bellwit::envelope_tangent_line_p2(p1, psi2, cfg.p);
          lf << fmt(psi2) << ',' << fmt(p1) << ',' << fmt(p2) << "\n";
        } catch (const std::invalid_argument&) {
          vertical = true;
          break;
        }
      }
      if (vertical) {
        lf << "# psi2=" << fmt(psi2) << " vertical line skipped\n";
      }
    }
    std::cerr << "linear family written to " << path << "\n";
  }
  return kExitClean;
}

struct ThermalConfig {
  std::vector<double> js{-1.0, -2.0, -3.0, -50.0};
  double h = 1.0;
  double t_min = 0.05;
  double t_max = 50.0;
  int steps = 200;
  double p = 1.0;
  int a0 = +1;
  std::string out_path;
};

int run_thermal(const ThermalConfig& cfg) {
  if (!(cfg.t_min > 0.0) || !(cfg.t_max > cfg.t_min) || cfg.steps < 2) {
    throw std::runtime_error(
        "thermal: need 0 < T-min < T-max and steps >= 2");
  }
  Output out(cfg.out_path);
  std::ostream& os = out.stream();
  os << "T,trace,fidelity,detected_by_witness,detected_by_fidelity\n";
  for (double j : cfg.js) {
    const bellwit::ThermalModel model =
        bellwit::ThermalModel::from_couplings(j, cfg.h);
    os << "# J=" << fmt(j) << " h=" << fmt(cfg.h) << " p=" << fmt(cfg.p)
       << " a0=" << cfg.a0 << "\n";
    for (int k = 0; k < cfg.steps; ++k) {
      const double t =
          cfg.t_min + (cfg.t_max - cfg.t_min) * k / (cfg.steps - 1);
      const double trace =
          bellwit::thermal_envelope_trace(model, t, cfg.p, cfg.a0);
      const double fid = bellwit::thermal_fidelity(model, t);
      os << fmt(t) << ',' << fmt(trace) << ',' << fmt(fid) << ','
         << bool_text(trace < 0.0) << ',' << bool_text(fid > 0.5) << "\n";
    }
    const bellwit::ThresholdResult th = bellwit::threshold_temperature(
        model, cfg.p, cfg.a0, bellwit::Bracket{cfg.t_min, cfg.t_max});
    os << "# summary J=" << fmt(j) << " T_th="
       << (th.found() ? fmt(*th.t_threshold) : std::string("none")) << "\n";
  }
  return kExitClean;
}

struct FidelityConfig {
  std::vector<double> js{-1.0, -2.0, -3.0};
  double h = 1.0;
  double t_min = 0.05;
  double t_max = 50.0;
  int steps = 200;
  std::string out_path;
};

int run_fidelity(const FidelityConfig& cfg) {
  if (!(cfg.t_min > 0.0) || !(cfg.t_max > cfg.t_min) || cfg.steps < 2) {
    throw std::runtime_error(
        "fidelity: need 0 < T-min < T-max and steps >= 2");
  }
  Output out(cfg.out_path);
  std::ostream& os = out.stream();
  os << "T,F,detects\n";
  for (double j : cfg.js) {
    os << "# J=" << fmt(j) << " h=" << fmt(cfg.h) << "\n";
    const bellwit::ThermalModel model =
        bellwit::ThermalModel::from_couplings(j, cfg.h);
    for (int k = 0; k < cfg.steps; ++k) {
      const double t =
          cfg.t_min + (cfg.t_max - cfg.t_min) * k / (cfg.steps - 1);
      const double f = (cfg.h == 1.0)
                           ? bellwit::fidelity_closed_form_h1(j, t)
                           : bellwit::thermal_fidelity(model, t);
      os << fmt(t) << ',' << fmt(f) << ',' << bool_text(f > 0.5) << "\n";
    }
  }
  return kExitClean;
}

struct HamiltonianConfig {
  std::string terms_path;
  std::string out_path;
};

int run_hamiltonian(const HamiltonianConfig& cfg) {
  const std::vector<bellwit::PauliTerm> terms =
      bellwit::read_pauli_terms_file(cfg.terms_path);
  bellwit::EnergySpectrum energies;
  try {
    energies = bellwit::pauli_terms_to_energies(terms);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitDetection;
  }
  Output out(cfg.out_path);
  std::ostream& os = out.stream();
  os << "index,energy\n";
  for (int i = 0; i < 16; ++i) {
    os << (i + 1) << ',' << fmt(energies[i]) << "\n";
  }
  os << "# diagonal_in_bell_basis=true\n";
  return kExitClean;
}

struct FamilyVerifyConfig {
  std::string reading = "dedup";
  int draws = 1;
  int multistarts = 16;
  std::uint64_t seed = bellwit::default_seed();
  std::string out_path;
};

int run_family_verify(const FamilyVerifyConfig& cfg) {
  const bellwit::FamilyReading reading =
      (cfg.reading == "literal") ? bellwit::FamilyReading::Literal
                                 : bellwit::FamilyReading::Deduplicated;
  const std::vector<bellwit::WitnessSpec> specs =
      bellwit::enumerate_family(reading);

  Output out(cfg.out_path);
  std::ostream& os = out.stream();
  os << "id,worst_trace\n";
  int violations = 0;
  std::mt19937_64 draw_rng(cfg.seed);
  for (std::size_t idx = 0; idx < specs.size(); ++idx) {
    bellwit::WitnessSpec spec = specs[idx];
    double worst = std::numeric_limits<double>::infinity();
    for (int d = 0; d < cfg.draws; ++d) {
      spec.p = bellwit::uniform_unit(draw_rng);
      spec.psi1 = 2.0 * kPi * bellwit::uniform_unit(draw_rng);
      spec.psi2 = 2.0 * kPi * bellwit::uniform_unit(draw_rng);
      const bellwit::WitnessAmplitudes amp =
          bellwit::WitnessAmplitudes::from_mixing(spec.p, spec.psi1,
                                                  spec.psi2);
      bellwit::MinimizeOptions opts;
      opts.multistarts = cfg.multistarts;
      opts.seed = splitmix64(cfg.seed + idx * 1000003ull + d);
      worst = std::min(worst, bellwit::min_product_trace(spec, amp, opts));
    }
    os << spec.id() << ',' << fmt(worst) << "\n";
    if (worst < -1e-7) {
      std::cerr << "positivity violation: " << spec.id() << " worst "
                << fmt(worst) << "\n";
      ++violations;
    }
  }
  return violations == 0 ? kExitClean : kExitDetection;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Four-qubit Bell-diagonal state toolkit: PPT classification, linear and "
      "envelope entanglement witnesses, thermal detection, GHZ fidelity.\n"
      "Exit codes: 0 = clean (PPT / no violation), 1 = detection or "
      "violation (NPT state, non-diagonal Hamiltonian, positivity failure), "
      "2 = usage or input error."};
  app.require_subcommand(1);
  // The thermal subcommands expose a --h field option, so the automatic
  // help flag must not claim the short name -h anywhere in the tree.
  app.set_help_flag("--help", "Print this help message and exit");

  PptConfig ppt_cfg;
  CLI::App* ppt = app.add_subcommand(
      "ppt", "Classify a 16-weight state file (JSON array or CSV line); "
             "prints a JSON report. Exit 0 = PPT, 1 = NPT, 2 = input error.");
  ppt->add_option("probs-file", ppt_cfg.probs_path,
                  "File with 16 mixing weights")
      ->required();
  ppt->add_option("--out", ppt_cfg.out_path, "Output path (default stdout)");

  EnvelopeConfig env_cfg;
  CLI::App* env = app.add_subcommand(
      "envelope",
      "Zero locus of the envelope witness on the (p1, p2) slice "
      "(p3 = 1 - p1 - p2), columns p1,p2_lower,p2_upper,trace_on_curve; "
      "optionally the tangent linear-witness lines (psi2,p1,p2).");
  env->add_option("--p1-min", env_cfg.p1_min, "Sweep start")
      ->capture_default_str();
  env->add_option("--p1-max", env_cfg.p1_max, "Sweep end")
      ->capture_default_str();
  env->add_option("--steps", env_cfg.steps, "Grid points")
      ->capture_default_str();
  env->add_option("--p", env_cfg.p, "Mixing weight of the first radical")
      ->capture_default_str();
  env->add_option("--a0", env_cfg.a0, "Sign of the z-term (+1 or -1)")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  env->add_option("--linear-family", env_cfg.linear_family,
                  "Number of tangent lines over psi2 in [pi/2, 3pi/2) "
                  "(0 disables); written to OUT.linear.csv, or "
                  "envelope_linear.csv when OUT is stdout")
      ->capture_default_str();
  env->add_option("--out", env_cfg.out_path, "Output path (default stdout)");

  ThermalConfig th_cfg;
  CLI::App* th = app.add_subcommand(
      "thermal",
      "Witness trace over a temperature sweep per coupling J, columns "
      "T,trace,fidelity,detected_by_witness,detected_by_fidelity, plus a "
      "threshold summary comment per J.");
  th->set_help_flag("--help", "Print this help message and exit");
  th->add_option("--J", th_cfg.js, "Couplings, comma-separated")
      ->delimiter(',')
      ->capture_default_str();
  th->add_option("--h", th_cfg.h, "Field strength")->capture_default_str();
  th->add_option("--T-min", th_cfg.t_min, "Sweep start")
      ->capture_default_str();
  th->add_option("--T-max", th_cfg.t_max, "Sweep end")->capture_default_str();
  th->add_option("--steps", th_cfg.steps, "Grid points")
      ->capture_default_str();
  th->add_option("--p", th_cfg.p, "Mixing weight")->capture_default_str();
  th->add_option("--a0", th_cfg.a0, "Sign selector of the z-term")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  th->add_option("--out", th_cfg.out_path, "Output path (default stdout)");

  FidelityConfig fid_cfg;
  CLI::App* fid = app.add_subcommand(
      "fidelity",
      "Reference-state overlap over a temperature sweep per coupling J, "
      "columns T,F,detects (F > 1/2).");
  fid->set_help_flag("--help", "Print this help message and exit");
  fid->add_option("--J", fid_cfg.js, "Couplings, comma-separated")
      ->delimiter(',')
      ->capture_default_str();
  fid->add_option("--h", fid_cfg.h, "Field strength (closed form used at 1)")
      ->capture_default_str();
  fid->add_option("--T-min", fid_cfg.t_min, "Sweep start")
      ->capture_default_str();
  fid->add_option("--T-max", fid_cfg.t_max, "Sweep end")
      ->capture_default_str();
  fid->add_option("--steps", fid_cfg.steps, "Grid points")
      ->capture_default_str();
  fid->add_option("--out", fid_cfg.out_path, "Output path (default stdout)");

  HamiltonianConfig ham_cfg;
  CLI::App* ham = app.add_subcommand(
      "hamiltonian",
      "Diagonalize a Pauli-term file in the generalized Bell basis; prints "
      "index,energy rows. Exit 1 when the operator is not diagonal there.");
  ham->add_option("terms-file", ham_cfg.terms_path,
                  "Lines of '<coefficient> <4-char Pauli word>'")
      ->required();
  ham->add_option("--out", ham_cfg.out_path, "Output path (default stdout)");

  FamilyVerifyConfig fam_cfg;
  CLI::App* fam = app.add_subcommand(
      "family-verify",
      "Product-state positivity sweep over the enumerated witness family; "
      "columns id,worst_trace. Exit 1 when any minimum falls below -1e-7.");
  fam->add_option("--reading", fam_cfg.reading,
                  "Family reading: dedup (336) or literal (320)")
      ->check(CLI::IsMember({"dedup", "literal"}))
      ->capture_default_str();
  fam->add_option("--draws", fam_cfg.draws,
                  "Random (p, psi1, psi2) draws per member")
      ->capture_default_str();
  fam->add_option("--multistarts", fam_cfg.multistarts,
                  "Random restarts inside each minimization")
      ->capture_default_str();
  fam->add_option("--seed", fam_cfg.seed,
                  "RNG seed (default: EW_SEED env var, else fixed)")
      ->capture_default_str();
  fam->add_option("--out", fam_cfg.out_path, "Output path (default stdout)");

  for (CLI::App* sub : app.get_subcommands(nullptr)) {
    sub->set_help_flag("--help", "Print this help message and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitClean : kExitInputError;
  }

  try {
    if (ppt->parsed()) return run_ppt(ppt_cfg);
    if (env->parsed()) return run_envelope(env_cfg);
    if (th->parsed()) return run_thermal(th_cfg);
    if (fid->parsed()) return run_fidelity(fid_cfg);
    if (ham->parsed()) return run_hamiltonian(ham_cfg);
    if (fam->parsed()) return run_family_verify(fam_cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
