#include <doctest.h>

#include "spinlab/report.hpp"
#include "spinlab/verify.hpp"

using namespace spinlab;

TEST_CASE("every suite passes in both modes") {
  for (const std::string& suite : suite_names()) {
    for (ArithmeticMode mode : {ArithmeticMode::Exact, ArithmeticMode::Float}) {
      CAPTURE(suite);
      const SuiteResult r = run_suite(suite, 50, 1, mode);
      CHECK(r.passed());
      CHECK_FALSE(r.first_failure.has_value());
      for (const auto& inv : r.invariants) CHECK(inv.samples >= 1);
    }
  }
}

TEST_CASE("exact clifford residuals are identically zero") {
  const SuiteResult r = run_suite("clifford", 200, 5, ArithmeticMode::Exact);
  for (const auto& inv : r.invariants) CHECK(inv.max_residual == 0.0);
}

TEST_CASE("results do not depend on the worker count") {
  const SuiteResult a = run_suite("theorem", 200, 99, ArithmeticMode::Float, 1);
  const SuiteResult b = run_suite("theorem", 200, 99, ArithmeticMode::Float, 4);
  CHECK(verify_payload(a).dump() == verify_payload(b).dump());
}

TEST_CASE("suite arguments are validated") {
  CHECK_THROWS_AS(run_suite("nope", 10, 1, ArithmeticMode::Float), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("clifford", 0, 1, ArithmeticMode::Float), std::invalid_argument);
  CHECK_THROWS_AS(parse_mode("double"), std::invalid_argument);
  CHECK(parse_mode("exact") == ArithmeticMode::Exact);
}

TEST_CASE("JSON encodings") {
  CHECK(scalar_json(Complex(1.5, -2.0)).dump() == "[1.5,-2.0]");
  CHECK(scalar_json(ExactComplex(Rational(-3, 4), Rational(1))).dump() == R"(["-3/4","1"])");
  CHECK(form_json(kahler_form<Complex>()).size() == 6);
  CHECK(form_json(kahler_form<Complex>())[1].dump() == "[0.0,1.0]");
}

TEST_CASE("decompose payload") {
  const nlohmann::json p = decompose_payload(asd_form(ExactComplex(0), ExactComplex(0), ExactComplex(1)));
  CHECK(p["asd_coefficients"].dump() == R"([["0","0"],["0","0"],["1","0"]])");
  CHECK(p["lambda"].dump() == R"(["0","0"])");
  CHECK(p["hodge_residual"] == 0.0);
  CHECK(p["recompose_residual"] == 0.0);
}

TEST_CASE("action payload refuses the even block of a (2,0) form") {
  const auto beta = TwoForm<Complex>::monomial(TwoForm<Complex>::k12);
  CHECK_THROWS_AS(action_payload(beta, ActionBlock::Even), FormTypeError);
  CHECK_NOTHROW(action_payload(beta, ActionBlock::Full));
  const nlohmann::json p = action_payload(TwoForm<Complex>(), ActionBlock::Full);
  CHECK(p["verdict"] == "Zero");
}

TEST_CASE("CSV table") {
  CHECK(eigenvalue_csv({1.0, 2.5}) == "index,eigenvalue\n0,1\n1,2.5\n");
}

TEST_CASE("manifest fields") {
  const nlohmann::json m = make_manifest("torus", {{"N", 8}}, 42);
  for (const char* key : {"command", "params", "seed", "version", "timestamp"}) CHECK(m.contains(key));
  CHECK(m["seed"] == 42);
  CHECK(m["timestamp"].get<std::string>().size() == 20);
}
