#include <doctest.h>

#include "spinlab/fiber_algebra.hpp"
#include "spinlab/form_decomposition.hpp"
#include "spinlab/random_forms.hpp"

using namespace spinlab;
using E = ExactComplex;
using F = TwoForm<E>;

namespace {

Spinor<E> e(int k) { return spinor_basis<E>(k); }
const E r2 = E::sqrt2();

}  // namespace

TEST_CASE("wedge_bar on basis spinors") {
  CHECK(wedge_bar(1, e(kScalar)) == e(kBar1));
  CHECK(wedge_bar(1, e(kBar1)) == Spinor<E>::Zero());
  CHECK(wedge_bar(2, e(kBar1)) == Spinor<E>(-e(kBar12)));
  CHECK(wedge_bar(1, e(kBar2)) == e(kBar12));
  CHECK(wedge_bar(2, e(kBar12)) == Spinor<E>::Zero());
}

TEST_CASE("contract_bar is a left graded derivation") {
  CHECK(contract_bar(1, e(kBar1)) == e(kScalar));
  CHECK(contract_bar(1, e(kBar12)) == e(kBar2));
  CHECK(contract_bar(2, e(kBar12)) == Spinor<E>(-e(kBar1)));
  CHECK(contract_bar(2, e(kBar1)) == Spinor<E>::Zero());
  CHECK(contract_bar(1, e(kScalar)) == Spinor<E>::Zero());
}

TEST_CASE("form index outside {1,2} is rejected") {
  CHECK_THROWS_AS(wedge_bar(0, e(kScalar)), std::out_of_range);
  CHECK_THROWS_AS(contract_bar(3, e(kScalar)), std::out_of_range);
}

TEST_CASE("one-form action carries sqrt2") {
  CHECK(clifford_oneform(OneForm<E>::xi_bar(1), e(kScalar)) == Spinor<E>(r2 * e(kBar1)));
  CHECK(clifford_oneform(OneForm<E>::xi(1), e(kScalar)) == Spinor<E>::Zero());
  CHECK(clifford_oneform(OneForm<E>::xi(1), e(kBar1)) == Spinor<E>(-r2 * e(kScalar)));
}

TEST_CASE("two-form action examples") {
  Spinor<E> psi = Spinor<E>::Zero();
  psi(kBar1) = E(Rational(3), Rational(-1));
  psi(kBar2) = E(Rational(2, 5));

  SUBCASE("xi1 ^ xib2 sends psi1 xib1 to 2 psi1 xib2") {
    Spinor<E> expected = Spinor<E>::Zero();
    expected(kBar2) = E(2) * psi(kBar1);
    CHECK(clifford_twoform(F::monomial(F::k12b), psi) == expected);
  }
  SUBCASE("omega is null on odd spinors") {
    CHECK(clifford_twoform(kahler_form<E>(), e(kBar1)) == Spinor<E>::Zero());
    CHECK(clifford_twoform(kahler_form<E>(), psi) == Spinor<E>::Zero());
  }
  SUBCASE("xi1^xib1 - xi2^xib2 acts as diag(2, -2)") {
    Spinor<E> expected = Spinor<E>::Zero();
    expected(kBar1) = E(2) * psi(kBar1);
    expected(kBar2) = E(-2) * psi(kBar2);
    CHECK(clifford_twoform(asd_form(E(0), E(0), E(1)), psi) == expected);
  }
}

TEST_CASE("operator_matrix examples") {
  CHECK(operator_matrix(F()) == ActionMatrix<E>::Zero());

  Block2<E> expected;
  expected << E(0), E(2), E(0), E(0);
  CHECK(odd_block(operator_matrix(F::monomial(F::k21b))) == expected);

  SUBCASE("xib1 ^ xib2 raises degree 0 to 2 and kills the odd part") {
    const ActionMatrix<E> m = operator_matrix(F::monomial(F::k1b2b));
    CHECK(m(kBar12, kScalar) == E(2));
    CHECK(max_abs(odd_block(m)) == 0.0);
    CHECK(m.col(kBar12) == Spinor<E>::Zero());
  }
  SUBCASE("xi1 ^ xi2 lowers degree 2 to 0") {
    const ActionMatrix<E> m = operator_matrix(F::monomial(F::k12));
    CHECK(m(kScalar, kBar12) == E(-2));
    CHECK(m.col(kScalar) == Spinor<E>::Zero());
  }
}

TEST_CASE("operator_matrix matches the engine column by column") {
  std::mt19937_64 rng = sample_rng(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const TwoForm<E> beta = random_two_form<E>(rng);
    const ActionMatrix<E> m = operator_matrix(beta);
    for (int j = 0; j < 4; ++j) CHECK(m.col(j) == clifford_twoform(beta, e(j)));
  }
}

TEST_CASE("Clifford relation on real covectors, both modes") {
  std::mt19937_64 rng = sample_rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const OneForm<E> v = random_real_covector<E>(rng);
    const Spinor<E> psi = random_spinor<E>(rng);
    CHECK(clifford_oneform(v, clifford_oneform(v, psi)) == Spinor<E>(-v.norm_squared() * psi));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const OneForm<Complex> v = random_real_covector<Complex>(rng);
    const Spinor<Complex> psi = random_spinor<Complex>(rng);
    const Spinor<Complex> diff = clifford_oneform(v, clifford_oneform(v, psi)) + v.norm_squared() * psi;
    CHECK(diff.norm() <= 1e-12 * std::abs(v.norm_squared()) * psi.norm());
  }
}

TEST_CASE("real unit covector squares to -1") {
  // (xi^1 + xib^1) / sqrt2
  const OneForm<E> v = OneForm<E>::real(E(1) / r2, E(0));
  CHECK(v.norm_squared() == E(1));
  for (int k = 0; k < 4; ++k) CHECK(clifford_oneform(v, clifford_oneform(v, e(k))) == Spinor<E>(-e(k)));
}

TEST_CASE("exact field arithmetic") {
  CHECK(r2 * r2 == E(2));
  CHECK(E(1) / r2 == r2 / E(2));
  CHECK(E::i() * E::i() == E(-1));
  const E z(QuadraticRational(Rational(1, 3), Rational(2)), QuadraticRational(Rational(-5, 7), Rational(1, 2)));
  CHECK(z * (E(1) / z) == E(1));
  CHECK(parse_rational("-1.25") == Rational(-5, 4));
  CHECK(parse_rational("3e-2") == Rational(3, 100));
  CHECK(parse_rational("7/8") == Rational(7, 8));
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}
