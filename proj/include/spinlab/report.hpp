#pragma once

// Report documents emitted by the command-line tool. A document is
//   {"manifest": {command, params, seed, version, timestamp}, "payload": {...}}
// and only the manifest timestamp varies between identical runs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinlab/json_codec.hpp"
#include "spinlab/spinor_action.hpp"
#include "spinlab/torus_spectra.hpp"
#include "spinlab/verify.hpp"

namespace spinlab {

/// ISO-8601 UTC, second resolution.
std::string utc_timestamp();

nlohmann::json make_manifest(const std::string& command, const nlohmann::json& params, std::uint64_t seed);

inline nlohmann::json make_document(nlohmann::json manifest, nlohmann::json payload) {
  return {{"manifest", std::move(manifest)}, {"payload", std::move(payload)}};
}

std::string dump_document(const nlohmann::json& doc, bool compact);

template <class S>
nlohmann::json decompose_payload(const TwoForm<S>& beta) {
  const Decomposition<S> d = decompose(beta);
  const TwoForm<S> sd = sd_part(d), asd = asd_part(d);
  const TwoForm<S> star_sd = hodge_star(sd), star_asd = hodge_star(asd), back = recompose(d);
  double star = 0.0, round_trip = 0.0;
  for (int k = 0; k < 6; ++k) {
    star = std::max({star, magnitude(S(star_sd[k] - sd[k])), magnitude(S(star_asd[k] + asd[k]))});
    round_trip = std::max(round_trip, magnitude(S(back[k] - beta[k])));
  }
  return {{"mode", ScalarTraits<S>::mode_name},
          {"form", form_json(beta)},
          {"decomposition", decomposition_json(d)},
          {"sd_part", form_json(sd)},
          {"asd_part", form_json(asd)},
          {"asd_coefficients", nlohmann::json::array({scalar_json(d.a), scalar_json(d.b), scalar_json(d.c)})},
          {"lambda", scalar_json(contract_lambda(beta))},
          {"reality_class", to_string(reality_class(beta))},
          {"hodge_residual", star},
          {"recompose_residual", round_trip}};
}

enum class ActionBlock { Full, Odd, Even };

ActionBlock parse_block(std::string_view text);
const char* to_string(ActionBlock block);

inline nlohmann::json spectrum_json(const Spectrum& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const Complex& z : s) out.push_back(scalar_json(z));
  return out;
}

/// Throws FormTypeError for the even block of a form with (2,0)/(0,2) content.
template <class S>
nlohmann::json action_payload(const TwoForm<S>& beta, ActionBlock block) {
  const ActionMatrix<S> m = operator_matrix(beta);
  nlohmann::json matrix;
  nlohmann::json block_eigs = nlohmann::json::array();
  if (block == ActionBlock::Full) {
    matrix = matrix_json(m);
  } else {
    Block2<S> b;
    if (block == ActionBlock::Odd) {
      b = odd_block(m);
    } else {
      b = matrix_on_S_plus(beta);
    }
    matrix = matrix_json(b);
    const Eigen::Matrix2cd bc = to_complex(b);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(bc, false);
    std::array<Complex, 2> ev = {es.eigenvalues()(0), es.eigenvalues()(1)};
    std::sort(ev.begin(), ev.end(), [](const Complex& x, const Complex& y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    for (const Complex& z : ev) block_eigs.push_back(scalar_json(z));
  }
  const DefinitenessVerdict v = classify(beta);
  nlohmann::json out = {{"mode", ScalarTraits<S>::mode_name},
                        {"form", form_json(beta)},
                        {"block", to_string(block)},
                        {"matrix", matrix},
                        {"eigenvalues", spectrum_json(v.eigenvalues)},
                        {"verdict", to_string(v.verdict)},
                        {"reality_class", to_string(reality_class(beta))}};
  if (block != ActionBlock::Full) out["block_eigenvalues"] = block_eigs;
  return out;
}

nlohmann::json verify_payload(const SuiteResult& result);

struct TorusChecks {
  std::optional<CheckResult> identity;
  std::optional<CheckResult> bounds;
};

nlohmann::json torus_payload(const SpectrumReport& report, const TorusChecks& checks);

/// "index,eigenvalue" table, 17 significant digits.
std::string eigenvalue_csv(const std::vector<double>& eigenvalues);

}  // namespace spinlab
