#pragma once

// Randomized and exhaustive invariant suites over the fiber algebra, the
// SD/ASD decomposition and the spinor-action propositions.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace spinlab {

enum class ArithmeticMode { Exact, Float };

ArithmeticMode parse_mode(std::string_view text);
const char* to_string(ArithmeticMode mode);

struct InvariantResult {
  std::string name;
  long samples = 0;
  long failures = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;  // 0 means exact equality
  std::map<std::string, double> metrics;

  bool passed() const { return failures == 0; }
};

struct Counterexample {
  std::string invariant;
  long sample = 0;
  nlohmann::json input;
  double residual = 0.0;
};

struct SuiteResult {
  std::string suite;
  ArithmeticMode mode = ArithmeticMode::Float;
  long requested_samples = 0;
  std::uint64_t seed = 0;
  std::vector<InvariantResult> invariants;
  std::optional<Counterexample> first_failure;

  bool passed() const;
  const InvariantResult& invariant(std::string_view name) const;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"clifford", "decomp", "propositions", "theorem"};
  return names;
}

/// Runs one named suite. Results are independent of `jobs`.
/// Throws std::invalid_argument for an unknown suite or samples < 1.
SuiteResult run_suite(std::string_view suite, long samples, std::uint64_t seed, ArithmeticMode mode,
                      int jobs = 1);

}  // namespace spinlab
