// spinlab: fiberwise spinor-action checks and torus spectra from the command line.
//
// Exit codes: 0 pass, 1 assertion failure, 2 numerical failure, 64 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinlab/report.hpp"

namespace {

using namespace spinlab;

constexpr int kExitPass = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<std::uint64_t> seed_flag;
  std::string mode;
  std::string out;
  std::string csv;
  int jobs = 1;
  bool json = false;

  std::uint64_t seed() const {
    if (seed_flag) return *seed_flag;
    if (const char* env = std::getenv("SPINLAB_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used, 0);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return v;
      } catch (const std::exception&) {
        throw UsageError(std::string("SPINLAB_SEED is not an unsigned integer: ") + env);
      }
    }
    return 1;
  }

  ArithmeticMode arithmetic(ArithmeticMode fallback) const {
    if (mode.empty()) return fallback;
    try {
      return parse_mode(mode);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

/// Writes the JSON document to --out (always) and a summary or the JSON to stdout.
void emit(const Globals& g, const nlohmann::json& doc, const std::string& summary) {
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw UsageError("cannot write " + g.out);
    f << dump_document(doc, g.json) << '\n';
  }
  if (g.json) {
    std::cout << dump_document(doc, true) << '\n';
  } else {
    std::cout << summary;
  }
}

std::string fmt(const Complex& z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

template <class S>
std::string fmt(const S& z) {
  if constexpr (std::is_same_v<S, Complex>) {
    return fmt(static_cast<const Complex&>(z));
  } else {
    const std::string re = exact_string(z.real()), im = exact_string(z.imag());
    if (z.imag().is_zero()) return re;
    if (z.real().is_zero()) return "(" + im + ")i";
    return re + " + (" + im + ")i";
  }
}

template <class S>
TwoForm<S> parse_form(const std::vector<std::string>& parts) {
  if (parts.size() != 12) throw UsageError("expected 12 real numbers (re im for each of 6 coefficients)");
  TwoForm<S> beta;
  for (int k = 0; k < 6; ++k) {
    const std::string& re = parts[2 * k];
    const std::string& im = parts[2 * k + 1];
    try {
      if constexpr (ScalarTraits<S>::is_exact) {
        beta[k] = ExactComplex(parse_rational(re), parse_rational(im));
      } else {
        auto to_double = [](const std::string& s) {
          std::size_t used = 0;
          const double v = std::stod(s, &used);
          if (used != s.size()) throw std::invalid_argument(s);
          return v;
        };
        beta[k] = Complex(to_double(re), to_double(im));
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("cannot parse coefficient " + std::to_string(k) + ": '" + re + "' '" + im + "'");
    }
  }
  return beta;
}

template <class S>
std::string form_text(const TwoForm<S>& beta) {
  static const char* names[6] = {"xi1^xi2", "xi1^xib1", "xi1^xib2", "xi2^xib1", "xi2^xib2", "xib1^xib2"};
  std::string out;
  for (int k = 0; k < 6; ++k) out += "    " + std::string(names[k]) + ": " + fmt(beta[k]) + "\n";
  return out;
}

template <class S>
int run_decompose(const Globals& g, const std::vector<std::string>& parts) {
  const TwoForm<S> beta = parse_form<S>(parts);
  const nlohmann::json payload = decompose_payload(beta);
  const Decomposition<S> d = decompose(beta);
  std::string text = "form (" + std::string(ScalarTraits<S>::mode_name) + ")\n" + form_text(beta);
  text += "trace t: " + fmt(d.trace) + "\n";
  text += "(a, b, c): (" + fmt(d.a) + ", " + fmt(d.b) + ", " + fmt(d.c) + ")\n";
  text += "f20: " + fmt(d.f20) + "   f02: " + fmt(d.f02) + "\n";
  text += "Lambda: " + fmt(contract_lambda(beta)) + "\n";
  text += "reality class: " + std::string(to_string(reality_class(beta))) + "\n";
  text += "SD part\n" + form_text(sd_part(d)) + "ASD part\n" + form_text(asd_part(d));
  text += "hodge residual: " + payload["hodge_residual"].dump() + "\n";
  const nlohmann::json params = {{"form", parts}, {"mode", ScalarTraits<S>::mode_name}};
  emit(g, make_document(make_manifest("decompose", params, g.seed()), payload), text);
  return kExitPass;
}

template <class S>
int run_action(const Globals& g, const std::vector<std::string>& parts, const std::string& block_name) {
  ActionBlock block;
  try {
    block = parse_block(block_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const TwoForm<S> beta = parse_form<S>(parts);
  nlohmann::json payload;
  try {
    payload = action_payload(beta, block);
  } catch (const FormTypeError& e) {
    std::cerr << "refused: the even block is diagonal only for (1,1)-forms; " << e.what() << '\n';
    return kExitUsage;
  }
  std::string text = std::string(to_string(block)) + " block\n";
  for (const auto& row : payload["matrix"]) {
    text += "   ";
    for (const auto& z : row) text += " [" + z[0].dump() + ", " + z[1].dump() + "]";
    text += "\n";
  }
  text += "eigenvalues:";
  for (const auto& z : payload["eigenvalues"]) text += " " + fmt(Complex(z[0].get<double>(), z[1].get<double>()));
  text += "\nverdict: " + payload["verdict"].get<std::string>() + "\n";
  const nlohmann::json params = {{"form", parts}, {"block", block_name}, {"mode", ScalarTraits<S>::mode_name}};
  emit(g, make_document(make_manifest("action", params, g.seed()), payload), text);
  return kExitPass;
}

int run_verify(const Globals& g, const std::string& suite, long samples) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  if (g.jobs < 1) throw UsageError("--jobs must be >= 1");
  const ArithmeticMode mode = g.arithmetic(ArithmeticMode::Exact);
  const std::uint64_t seed = g.seed();
  SuiteResult result;
  try {
    result = run_suite(suite, samples, seed, mode, g.jobs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const nlohmann::json payload = verify_payload(result);
  std::string text = "suite " + suite + " (" + to_string(mode) + ", seed " + std::to_string(seed) + ")\n";
  for (const auto& r : result.invariants) {
    char line[200];
    std::snprintf(line, sizeof line, "  %-32s %s  %ld/%ld  max residual %.3e\n", r.name.c_str(),
                  r.passed() ? "PASS" : "FAIL", r.samples - r.failures, r.samples, r.max_residual);
    text += line;
  }
  const nlohmann::json params = {{"suite", suite}, {"samples", samples}, {"mode", to_string(mode)}};
  emit(g, make_document(make_manifest("verify", params, seed), payload), text);
  if (!result.passed()) {
    std::cerr << "first counterexample: " << payload["first_failure"].dump() << '\n';
    return kExitAssertion;
  }
  return kExitPass;
}

int run_torus(const Globals& g, const LatticeConfig& config, bool check_identity_flag, bool check_bounds_flag) {
  if (!g.mode.empty() && g.mode != "float") throw UsageError("torus runs in float mode only");
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::uint64_t seed = g.seed();
  SpectrumReport report;
  TorusChecks checks;
  try {
    report = run_experiment(config, seed);
    if (check_identity_flag) checks.identity = check_identity(config, seed);
    if (check_bounds_flag) checks.bounds = check_bounds(config, seed);
  } catch (const EigensolverError& e) {
    std::cerr << "eigensolver failed: " << e.what() << " (iterations " << e.iterations() << ", residual "
              << e.residual() << ")\n";
    return kExitNumerical;
  }
  for (double v : report.eigenvalues)
    if (!std::isfinite(v)) {
      std::cerr << "non-finite eigenvalue\n";
      return kExitNumerical;
    }

  const nlohmann::json payload = torus_payload(report, checks);
  std::string text = "torus N=" + std::to_string(config.n) + " V=" + payload["config"]["volume"].dump() +
                     " d=" + std::to_string(config.degree) + "\n";
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k)
    text += "  lambda_" + std::to_string(k) + " = " + nlohmann::json(report.eigenvalues[k]).dump() + "\n";
  text += "  sharp bound " + nlohmann::json(report.sharp_bound).dump() + ", coarse bound " +
          nlohmann::json(report.coarse_bound).dump() + "\n";
  text += "  identity residual " + nlohmann::json(report.identity_residual).dump() + "\n";
  if (checks.identity) text += "  identity check: " + std::string(checks.identity->passed ? "PASS " : "FAIL ") + checks.identity->detail + "\n";
  if (checks.bounds) text += "  bound check: " + std::string(checks.bounds->passed ? "PASS " : "FAIL ") + checks.bounds->detail + "\n";

  const nlohmann::json params = {{"N", config.n},
                                 {"volume", config.volume},
                                 {"degree", config.degree},
                                 {"eigs", config.eig_count},
                                 {"check_identity", check_identity_flag},
                                 {"check_bounds", check_bounds_flag}};
  emit(g, make_document(make_manifest("torus", params, seed), payload), text);
  if (!g.csv.empty()) {
    std::ofstream f(g.csv);
    if (!f) throw UsageError("cannot write " + g.csv);
    f << eigenvalue_csv(report.eigenvalues);
  }
  const bool failed = (checks.identity && !checks.identity->passed) || (checks.bounds && !checks.bounds->passed);
  return failed ? kExitAssertion : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinlab: Clifford action of 2-forms on spinors and torus Dolbeault spectra"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", SPINLAB_VERSION);

  Globals g;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "64-bit seed (default: $SPINLAB_SEED, else 1)");
  app.add_option("--mode", g.mode, "arithmetic: exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--out", g.out, "write the JSON report to this file");
  app.add_option("--csv", g.csv, "write the eigenvalue table (torus) to this file");
  app.add_option("--jobs", g.jobs, "worker threads for verify")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "print the JSON report on stdout instead of a summary");

  std::vector<std::string> decompose_form;
  auto* decompose = app.add_subcommand("decompose", "SD/ASD decomposition of a 2-form");
  decompose->add_option("coefficients", decompose_form, "12 reals: re im per coefficient in basis order")
      ->required()
      ->expected(12);

  std::vector<std::string> action_form;
  std::string block = "full";
  auto* action = app.add_subcommand("action", "Clifford action matrix of a 2-form on spinors");
  action->add_option("coefficients", action_form, "12 reals: re im per coefficient in basis order")
      ->required()
      ->expected(12);
  action->add_option("--block", block, "full, odd or even")->check(CLI::IsMember({"full", "odd", "even"}));

  std::string suite;
  long samples = 1000;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite, "clifford, decomp, propositions or theorem")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--samples", samples, "random samples per invariant")->check(CLI::PositiveNumber);

  LatticeConfig config;
  bool check_identity_flag = false, check_bounds_flag = false;
  auto* torus = app.add_subcommand("torus", "lowest Dolbeault eigenvalues on a lattice torus");
  torus->add_option("--N", config.n, "lattice points per side (>= 4)");
  torus->add_option("--volume", config.volume, "torus area");
  torus->add_option("--degree", config.degree, "line bundle degree");
  torus->add_option("--eigs", config.eig_count, "number of eigenvalues");
  torus->add_flag("--check-identity", check_identity_flag, "check the Kahler identity residual against N/2");
  torus->add_flag("--check-bounds", check_bounds_flag, "check the lowest eigenvalue against the sharp bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (*seed_opt) g.seed_flag = seed_value;

  try {
    if (!g.csv.empty() && !*torus) throw UsageError("--csv applies to torus only");
    if (*decompose) {
      return g.arithmetic(ArithmeticMode::Exact) == ArithmeticMode::Exact ? run_decompose<ExactComplex>(g, decompose_form)
                                                                        : run_decompose<Complex>(g, decompose_form);
    }
    if (*action) {
      return g.arithmetic(ArithmeticMode::Exact) == ArithmeticMode::Exact ? run_action<ExactComplex>(g, action_form, block)
                                                                        : run_action<Complex>(g, action_form, block);
    }
    if (*verify) return run_verify(g, suite, samples);
    return run_torus(g, config, check_identity_flag, check_bounds_flag);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EigensolverError& e) {
    std::cerr << "eigensolver failed: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
