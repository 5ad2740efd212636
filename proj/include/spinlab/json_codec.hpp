#pragma once

// JSON encodings shared by the CLI reports and the verification suites.
// Complex numbers are [re, im]; forms are ordered 6-arrays in the basis order
// xi1^xi2, xi1^xib1, xi1^xib2, xi2^xib1, xi2^xib2, xib1^xib2. Exact values
// are written as strings ("-3/4", "1/2+1/3*sqrt2") so nothing is rounded.

#include <sstream>
#include <string>

#include <json.hpp>

#include "spinlab/fiber_algebra.hpp"
#include "spinlab/form_decomposition.hpp"

namespace spinlab {

inline nlohmann::json scalar_json(const Complex& z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline std::string exact_string(const QuadraticRational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

inline nlohmann::json scalar_json(const ExactComplex& z) {
  return nlohmann::json::array({exact_string(z.real()), exact_string(z.imag())});
}

template <class S>
nlohmann::json form_json(const TwoForm<S>& beta) {
  nlohmann::json out = nlohmann::json::array();
  for (int k = 0; k < 6; ++k) out.push_back(scalar_json(beta[k]));
  return out;
}

template <class S, int R, int C>
nlohmann::json matrix_json(const Eigen::Matrix<S, R, C>& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

template <class S>
nlohmann::json decomposition_json(const Decomposition<S>& d) {
  return {{"f20", scalar_json(d.f20)}, {"f02", scalar_json(d.f02)}, {"trace", scalar_json(d.trace)},
          {"a", scalar_json(d.a)},     {"b", scalar_json(d.b)},     {"c", scalar_json(d.c)}};
}

}  // namespace spinlab
