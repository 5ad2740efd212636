#include "spinlab/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace spinlab {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json make_manifest(const std::string& command, const nlohmann::json& params, std::uint64_t seed) {
  return {{"command", command},
          {"params", params},
          {"seed", seed},
          {"version", SPINLAB_VERSION},
          {"timestamp", utc_timestamp()}};
}

std::string dump_document(const nlohmann::json& doc, bool compact) {
  return compact ? doc.dump() : doc.dump(2);
}

ActionBlock parse_block(std::string_view text) {
  if (text == "full") return ActionBlock::Full;
  if (text == "odd") return ActionBlock::Odd;
  if (text == "even") return ActionBlock::Even;
  throw std::invalid_argument("unknown block '" + std::string(text) + "' (expected full, odd or even)");
}

const char* to_string(ActionBlock block) {
  switch (block) {
    case ActionBlock::Odd: return "odd";
    case ActionBlock::Even: return "even";
    default: return "full";
  }
}

nlohmann::json verify_payload(const SuiteResult& result) {
  nlohmann::json invariants = nlohmann::json::array();
  long total = 0, failed = 0;
  for (const auto& r : result.invariants) {
    nlohmann::json entry = {{"name", r.name},
                            {"samples", r.samples},
                            {"failures", r.failures},
                            {"max_residual", r.max_residual},
                            {"tolerance", r.tolerance},
                            {"passed", r.passed()}};
    if (!r.metrics.empty()) entry["metrics"] = r.metrics;
    invariants.push_back(std::move(entry));
    total += r.samples;
    failed += r.failures;
  }
  nlohmann::json out = {{"suite", result.suite},
                        {"mode", to_string(result.mode)},
                        {"requested_samples", result.requested_samples},
                        {"total_samples", total},
                        {"total_failures", failed},
                        {"passed", result.passed()},
                        {"invariants", invariants},
                        {"first_failure", nullptr}};
  if (result.first_failure) {
    const Counterexample& c = *result.first_failure;
    out["first_failure"] = {{"invariant", c.invariant}, {"sample", c.sample}, {"input", c.input}, {"residual", c.residual}};
  }
  return out;
}

namespace {

nlohmann::json check_json(const std::optional<CheckResult>& c) {
  if (!c) return nullptr;
  return {{"passed", c->passed}, {"detail", c->detail}};
}

}  // namespace

nlohmann::json torus_payload(const SpectrumReport& report, const TorusChecks& checks) {
  const LatticeConfig& c = report.config;
  return {{"config", {{"N", c.n}, {"volume", c.volume}, {"degree", c.degree}, {"eigs", c.eig_count}}},
          {"spacing", c.spacing()},
          {"eigenvalues", report.eigenvalues},
          {"lowest_multiplicity", lowest_multiplicity(report.eigenvalues)},
          {"coarse_bound", report.coarse_bound},
          {"sharp_bound", report.sharp_bound},
          {"identity_residual", report.identity_residual},
          {"dirac_identity_residual", report.dirac_identity_residual},
          {"solver", {{"iterations", report.solver_iterations}, {"max_residual", report.solver_residual}}},
          {"checks", {{"identity", check_json(checks.identity)}, {"bounds", check_json(checks.bounds)}}}};
}

std::string eigenvalue_csv(const std::vector<double>& eigenvalues) {
  std::string out = "index,eigenvalue\n";
  char buf[64];
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k, eigenvalues[k]);
    out += buf;
  }
  return out;
}

}  // namespace spinlab
