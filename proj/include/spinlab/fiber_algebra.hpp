#pragma once

// Fiberwise Clifford action on the spinor fiber of a Kahler surface.
//
// Spinors are identified with (0,*)-forms in a fixed unitary coframe
// {xi^1, xi^2, xib^1, xib^2}. The spinor basis order is
//   e0 = 1, e1 = xib^1, e2 = xib^2, e3 = xib^1 ^ xib^2,
// so the even half (S+) is {e0, e3} and the odd half (S-) is {e1, e2}.

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "spinlab/scalar.hpp"

namespace spinlab {

template <class S>
using Spinor = Eigen::Matrix<S, 4, 1>;

template <class S>
using ActionMatrix = Eigen::Matrix<S, 4, 4>;

template <class S>
using Block2 = Eigen::Matrix<S, 2, 2>;

enum SpinorSlot : int { kScalar = 0, kBar1 = 1, kBar2 = 2, kBar12 = 3 };

template <class S>
Spinor<S> spinor_basis(int slot) {
  Spinor<S> e = Spinor<S>::Zero();
  e(slot) = S(1);
  return e;
}

/// Complexified covector u1 xi^1 + u2 xi^2 + v1 xib^1 + v2 xib^2.
template <class S>
struct OneForm {
  S u1{}, u2{}, v1{}, v2{};

  static OneForm xi(int i) {
    OneForm f;
    (i == 1 ? f.u1 : f.u2) = S(1);
    return f;
  }
  static OneForm xi_bar(int i) {
    OneForm f;
    (i == 1 ? f.v1 : f.v2) = S(1);
    return f;
  }
  /// Real covector sum_i (u_i xi^i + conj(u_i) xib^i).
  static OneForm real(const S& w1, const S& w2) {
    return {w1, w2, ScalarTraits<S>::conj(w1), ScalarTraits<S>::conj(w2)};
  }

  /// |u1|^2 + |u2|^2 + |v1|^2 + |v2|^2 (unitary coframe).
  S norm_squared() const {
    auto sq = [](const S& z) { return z * ScalarTraits<S>::conj(z); };
    return sq(u1) + sq(u2) + sq(v1) + sq(v2);
  }
};

/// A complex 2-form in the monomial basis
///   xi1^xi2, xi1^xib1, xi1^xib2, xi2^xib1, xi2^xib2, xib1^xib2.
template <class S>
struct TwoForm {
  enum Slot : int { k12 = 0, k11b = 1, k12b = 2, k21b = 3, k22b = 4, k1b2b = 5 };
  using Coefficients = Eigen::Matrix<S, 6, 1>;

  Coefficients coeffs = Coefficients::Zero();

  TwoForm() = default;
  explicit TwoForm(Coefficients c) : coeffs(std::move(c)) {}
  TwoForm(S c12, S c11b, S c12b, S c21b, S c22b, S c1b2b) {
    coeffs << c12, c11b, c12b, c21b, c22b, c1b2b;
  }

  static TwoForm monomial(Slot slot) {
    TwoForm f;
    f.coeffs(slot) = S(1);
    return f;
  }

  const S& operator[](int slot) const { return coeffs(slot); }
  S& operator[](int slot) { return coeffs(slot); }

  bool is_zero() const {
    for (int k = 0; k < 6; ++k)
      if (!ScalarTraits<S>::is_zero(coeffs(k))) return false;
    return true;
  }

  /// Coefficient-space norm sqrt(sum |c_k|^2), in double.
  double norm() const {
    double s = 0;
    for (int k = 0; k < 6; ++k) s += std::norm(ScalarTraits<S>::to_complex(coeffs(k)));
    return std::sqrt(s);
  }

  friend TwoForm operator+(const TwoForm& x, const TwoForm& y) { return TwoForm(Coefficients(x.coeffs + y.coeffs)); }
  friend TwoForm operator-(const TwoForm& x, const TwoForm& y) { return TwoForm(Coefficients(x.coeffs - y.coeffs)); }
  friend TwoForm operator-(const TwoForm& x) { return TwoForm(Coefficients(-x.coeffs)); }
  friend TwoForm operator*(const S& s, const TwoForm& x) { return TwoForm(Coefficients(x.coeffs * s)); }
  friend bool operator==(const TwoForm& x, const TwoForm& y) { return x.coeffs == y.coeffs; }
};

namespace detail {

inline void check_index(int i) {
  if (i != 1 && i != 2) throw std::out_of_range("coframe index must be 1 or 2, got " + std::to_string(i));
}

// The two one-form factors (left, right) of each TwoForm monomial.
template <class S>
std::array<OneForm<S>, 2> monomial_factors(int slot) {
  using F = OneForm<S>;
  switch (slot) {
    case 0: return {F::xi(1), F::xi(2)};
    case 1: return {F::xi(1), F::xi_bar(1)};
    case 2: return {F::xi(1), F::xi_bar(2)};
    case 3: return {F::xi(2), F::xi_bar(1)};
    case 4: return {F::xi(2), F::xi_bar(2)};
    default: return {F::xi_bar(1), F::xi_bar(2)};
  }
}

}  // namespace detail

/// xib^i ^ psi. Convention: xib^1 ^ xib^2 is the basis element e3.
template <class S>
Spinor<S> wedge_bar(int i, const Spinor<S>& psi) {
  detail::check_index(i);
  Spinor<S> out = Spinor<S>::Zero();
  if (i == 1) {
    out(kBar1) = psi(kScalar);
    out(kBar12) = psi(kBar2);
  } else {
    out(kBar2) = psi(kScalar);
    out(kBar12) = -psi(kBar1);
  }
  return out;
}

/// Interior product xib^i -| psi, a graded derivation acting from the left.
/// Satisfies contract_bar(i, wedge_bar(i, .)) + wedge_bar(i, contract_bar(i, .)) = Id.
template <class S>
Spinor<S> contract_bar(int i, const Spinor<S>& psi) {
  detail::check_index(i);
  Spinor<S> out = Spinor<S>::Zero();
  if (i == 1) {
    out(kScalar) = psi(kBar1);
    out(kBar2) = psi(kBar12);
  } else {
    out(kScalar) = psi(kBar2);
    out(kBar1) = -psi(kBar12);
  }
  return out;
}

/// Clifford multiplication by a 1-form:
///   xi^i  . psi = -sqrt2 (xib^i -| psi)
///   xib^i . psi = +sqrt2 (xib^i  ^ psi)
template <class S>
Spinor<S> clifford_oneform(const OneForm<S>& alpha, const Spinor<S>& psi) {
  const S r2 = ScalarTraits<S>::sqrt2();
  Spinor<S> contracted = alpha.u1 * contract_bar(1, psi) + alpha.u2 * contract_bar(2, psi);
  Spinor<S> wedged = alpha.v1 * wedge_bar(1, psi) + alpha.v2 * wedge_bar(2, psi);
  return Spinor<S>(r2 * (wedged - contracted));
}

/// Clifford multiplication by a 2-form, with alpha ^ gamma acting as
/// (alpha gamma - gamma alpha) / 2.
template <class S>
Spinor<S> clifford_twoform(const TwoForm<S>& beta, const Spinor<S>& psi) {
  const S half = S(1) / S(2);
  Spinor<S> out = Spinor<S>::Zero();
  for (int k = 0; k < 6; ++k) {
    if (ScalarTraits<S>::is_zero(beta[k])) continue;
    auto [alpha, gamma] = detail::monomial_factors<S>(k);
    Spinor<S> ag = clifford_oneform(alpha, clifford_oneform(gamma, psi));
    Spinor<S> ga = clifford_oneform(gamma, clifford_oneform(alpha, psi));
    out += (beta[k] * half) * (ag - ga);
  }
  return out;
}

namespace detail {

/// Action matrices of the six basis monomials, built once per scalar type.
template <class S>
const std::array<ActionMatrix<S>, 6>& monomial_matrices() {
  static const std::array<ActionMatrix<S>, 6> table = [] {
    std::array<ActionMatrix<S>, 6> t;
    for (int k = 0; k < 6; ++k)
      for (int j = 0; j < 4; ++j) t[k].col(j) = clifford_twoform(TwoForm<S>::monomial(static_cast<typename TwoForm<S>::Slot>(k)), spinor_basis<S>(j));
    return t;
  }();
  return table;
}

}  // namespace detail

/// Matrix of psi -> beta . psi in the spinor basis; column j is beta . e_j.
template <class S>
ActionMatrix<S> operator_matrix(const TwoForm<S>& beta) {
  const auto& basis = detail::monomial_matrices<S>();
  ActionMatrix<S> m = ActionMatrix<S>::Zero();
  for (int k = 0; k < 6; ++k) {
    if (ScalarTraits<S>::is_zero(beta[k])) continue;
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i)
        if (!ScalarTraits<S>::is_zero(basis[k](i, j))) m(i, j) += beta[k] * basis[k](i, j);
  }
  return m;
}

/// Odd (S-) block in the (xib^1, xib^2) basis.
template <class S>
Block2<S> odd_block(const ActionMatrix<S>& m) {
  return m.template block<2, 2>(1, 1);
}

/// Even (S+) block in the (1, xib^1 ^ xib^2) basis.
template <class S>
Block2<S> even_block(const ActionMatrix<S>& m) {
  Block2<S> b;
  b << m(0, 0), m(0, 3), m(3, 0), m(3, 3);
  return b;
}

template <class S, int R, int C>
Eigen::Matrix<Complex, R, C> to_complex(const Eigen::Matrix<S, R, C>& m) {
  return m.unaryExpr([](const S& z) { return ScalarTraits<S>::to_complex(z); });
}

template <class S, int R, int C>
Eigen::Matrix<S, C, R> conjugate_transpose(const Eigen::Matrix<S, R, C>& m) {
  return m.unaryExpr([](const S& z) { return ScalarTraits<S>::conj(z); }).transpose();
}

/// max_ij |m_ij| in double; exact nonzero entries never report 0.
template <class S, int R, int C>
double max_abs(const Eigen::Matrix<S, R, C>& m) {
  double r = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r = std::max(r, magnitude(m(i, j)));
  return r;
}

}  // namespace spinlab
