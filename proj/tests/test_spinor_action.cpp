#include <doctest.h>

#include "spinlab/random_forms.hpp"
#include "spinlab/spinor_action.hpp"

using namespace spinlab;
using E = ExactComplex;
using F = TwoForm<E>;

namespace {

const E i = E::i();

Block2<E> block(E a, E b, E c, E d) {
  Block2<E> m;
  m << a, b, c, d;
  return m;
}

void check_spectrum(const Spectrum& got, std::array<double, 4> expected) {
  for (int k = 0; k < 4; ++k) CHECK(std::abs(got[k] - Complex(expected[k], 0.0)) < 1e-12);
}

PreconditionViolation violation_of(const F& beta, FormRequirement req = FormRequirement::Any11) {
  try {
    theorem_main_check(beta, req);
  } catch (const TheoremPreconditionError& e) {
    return e.violation();
  }
  FAIL("no precondition error");
  return PreconditionViolation::ZeroForm;
}

}  // namespace

TEST_CASE("S- matrix examples") {
  CHECK(matrix_on_S_minus<E>({E(1), E(0), E(0)}) == block(E(0), E(0), E(2), E(0)));
  CHECK(matrix_on_S_minus<E>({E(0), E(0), E(1)}) == block(E(2), E(0), E(0), E(-2)));
  CHECK(matrix_on_S_minus<E>({E(0), E(0), E(0)}) == Block2<E>::Zero());
}

TEST_CASE("S+ matrix examples") {
  const E f(Rational(3, 7), Rational(-2));
  CHECK(matrix_on_S_plus(F(f * kahler_form<E>())) == block(E(-2) * i * f, E(0), E(0), E(2) * i * f));
  CHECK(matrix_on_S_plus(kahler_form<E>()) == block(E(-2) * i, E(0), E(0), E(2) * i));
  CHECK(matrix_on_S_plus(asd_form(E(1), E(2), E(3))) == Block2<E>::Zero());
  CHECK_THROWS_AS(matrix_on_S_plus(F::monomial(F::k12)), FormTypeError);
  CHECK_THROWS_AS(matrix_on_S_plus(F::monomial(F::k1b2b)), FormTypeError);
}

TEST_CASE("action spectra") {
  check_spectrum(action_spectrum(asd_form(E(0), E(0), E(1))), {-2, 0, 0, 2});
  check_spectrum(action_spectrum(F(i * kahler_form<E>())), {-2, 0, 0, 2});
  check_spectrum(action_spectrum(F()), {0, 0, 0, 0});
}

TEST_CASE("classify examples") {
  CHECK(classify(F()).verdict == Definiteness::Zero);
  CHECK(classify(F::monomial(F::k12b)).verdict == Definiteness::NonHermitian);
  // i(xi1^xib2 + xi2^xib1) is real-valued, so its action is anti-Hermitian.
  CHECK(classify(F(i * (F::monomial(F::k12b) + F::monomial(F::k21b)))).verdict == Definiteness::NonHermitian);
  CHECK(classify(F(F::monomial(F::k12b) + F::monomial(F::k21b))).verdict == Definiteness::Indefinite);
  CHECK(classify(F(i * kahler_form<E>())).verdict == Definiteness::Indefinite);
}

TEST_CASE("classify_matrix covers the semidefinite verdicts") {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1.0;
  CHECK(classify_matrix(m, 1.0, true).verdict == Definiteness::PositiveSemidefinite);
  CHECK(classify_matrix(Eigen::Matrix4cd(-m), 1.0, true).verdict == Definiteness::NegativeSemidefinite);
  CHECK(classify_matrix(Eigen::Matrix4cd::Identity(), 1.0, true).verdict == Definiteness::PositiveDefinite);
  CHECK(classify_matrix(Eigen::Matrix4cd(-Eigen::Matrix4cd::Identity()), 1.0, true).verdict ==
        Definiteness::NegativeDefinite);
}

TEST_CASE("main theorem check") {
  CHECK(theorem_main_check(F(i * kahler_form<E>()), FormRequirement::SD));
  CHECK(theorem_main_check(asd_form(E(0), E(0), E(1)), FormRequirement::ASD));
  CHECK(theorem_main_check(asd_form(E(0), E(0), E(1))));

  std::mt19937_64 rng = sample_rng(17, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    TwoForm<Complex> beta = normalized(random_u1_type11<Complex>(rng));
    REQUIRE(theorem_main_check(beta));
    const Spectrum s = classify(beta).eigenvalues;
    CHECK(s[0].real() < -1e-9);
    CHECK(s[3].real() > 1e-9);
  }
}

TEST_CASE("theorem preconditions are reported distinctly") {
  CHECK(violation_of(F()) == PreconditionViolation::ZeroForm);
  CHECK(violation_of(kahler_form<E>()) == PreconditionViolation::WrongRealityClass);
  CHECK(violation_of(F(i * asd_form(E(0), E(0), E(1)))) == PreconditionViolation::WrongRealityClass);
  CHECK(violation_of(F(F::monomial(F::k12) - F::monomial(F::k1b2b))) == PreconditionViolation::NotType11);
  CHECK(violation_of(asd_form(E(0), E(0), E(1)), FormRequirement::SD) == PreconditionViolation::WrongSdAsdType);
  CHECK(violation_of(F(i * kahler_form<E>()), FormRequirement::ASD) == PreconditionViolation::WrongSdAsdType);
}

TEST_CASE("block cross-check") {
  const BlockResiduals omega = cross_check_blocks(kahler_form<E>());
  CHECK(omega.odd == 0.0);
  CHECK(omega.even == 0.0);
  std::mt19937_64 rng = sample_rng(19, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const BlockResiduals r = cross_check_blocks(random_type11<E>(rng));
    CHECK(r.odd == 0.0);
    CHECK(r.even == 0.0);
    const BlockResiduals s = cross_check_blocks(asd_form(random_scalar<E>(rng), random_scalar<E>(rng), random_scalar<E>(rng)));
    CHECK(s.odd == 0.0);
    CHECK(s.even == 0.0);
  }
  CHECK_THROWS_AS(cross_check_blocks(F::monomial(F::k12)), FormTypeError);
}

TEST_CASE("ASD eigenvalue pair matches the odd block") {
  const AsdCoefficients<E> k{E(Rational(1, 2), Rational(1)), E(Rational(1, 2), Rational(-1)), E(Rational(-3, 4))};
  const auto pair = asd_eigenvalue_pair(k);
  const double r = 2.0 * std::sqrt(0.5625 + 1.25);
  CHECK(std::abs(pair[0] - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(pair[1] + Complex(r, 0)) < 1e-12);
}
