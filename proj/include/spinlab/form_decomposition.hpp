#pragma once

// Self-dual / anti-self-dual splitting of 2-forms on a Kahler surface.
//
//   Omega+ = Omega^{2,0} + Omega^0 omega + Omega^{0,2}
//   Omega- = Omega^{1,1}_0, basis {xi1^xib2, xi2^xib1, xi1^xib1 - xi2^xib2}
//
// The Hodge star here is built independently from a real orthonormal frame
// and serves as the oracle for the splitting.

#include <array>

#include "spinlab/fiber_algebra.hpp"

namespace spinlab {

/// beta = f20 xi1^xi2 + trace omega + f02 xib1^xib2                (SD)
///      + a xi1^xib2 + b xi2^xib1 + c (xi1^xib1 - xi2^xib2)        (ASD)
template <class S>
struct Decomposition {
  S f20{}, f02{}, trace{};
  S a{}, b{}, c{};

  friend bool operator==(const Decomposition& x, const Decomposition& y) {
    return x.f20 == y.f20 && x.f02 == y.f02 && x.trace == y.trace && x.a == y.a && x.b == y.b &&
           x.c == y.c;
  }
};

enum class RealityClass { Real, PureImaginaryValued, Neither };

inline const char* to_string(RealityClass r) {
  switch (r) {
    case RealityClass::Real: return "Real";
    case RealityClass::PureImaginaryValued: return "PureImaginaryValued";
    default: return "Neither";
  }
}

/// omega = i (xi1^xib1 + xi2^xib2).
template <class S>
TwoForm<S> kahler_form() {
  const S i = ScalarTraits<S>::i();
  return TwoForm<S>(S(0), i, S(0), S(0), i, S(0));
}

/// The anti-self-dual form with coefficients (a, b, c) over the Omega^{1,1}_0 basis.
template <class S>
TwoForm<S> asd_form(const S& a, const S& b, const S& c) {
  return TwoForm<S>(S(0), c, a, b, -c, S(0));
}

template <class S>
Decomposition<S> decompose(const TwoForm<S>& beta) {
  using F = TwoForm<S>;
  const S two = S(2);
  Decomposition<S> d;
  d.f20 = beta[F::k12];
  d.f02 = beta[F::k1b2b];
  d.trace = (beta[F::k11b] + beta[F::k22b]) / (two * ScalarTraits<S>::i());
  d.a = beta[F::k12b];
  d.b = beta[F::k21b];
  d.c = (beta[F::k11b] - beta[F::k22b]) / two;
  return d;
}

template <class S>
TwoForm<S> sd_part(const Decomposition<S>& d) {
  using F = TwoForm<S>;
  return d.f20 * F::monomial(F::k12) + d.trace * kahler_form<S>() + d.f02 * F::monomial(F::k1b2b);
}

template <class S>
TwoForm<S> asd_part(const Decomposition<S>& d) {
  return asd_form(d.a, d.b, d.c);
}

template <class S>
TwoForm<S> recompose(const Decomposition<S>& d) {
  return sd_part(d) + asd_part(d);
}

/// Contraction by the Kahler form, normalized so that Lambda omega = 2.
template <class S>
S contract_lambda(const TwoForm<S>& beta) {
  using F = TwoForm<S>;
  return -ScalarTraits<S>::i() * (beta[F::k11b] + beta[F::k22b]);
}

/// Complex conjugation: xi^i -> xib^i, so xi^i^xib^j -> -xi^j^xib^i and
/// xi1^xi2 <-> xib1^xib2.
template <class S>
TwoForm<S> conjugate(const TwoForm<S>& beta) {
  using F = TwoForm<S>;
  auto cj = [](const S& z) { return ScalarTraits<S>::conj(z); };
  TwoForm<S> out;
  out[F::k12] = cj(beta[F::k1b2b]);
  out[F::k1b2b] = cj(beta[F::k12]);
  out[F::k11b] = -cj(beta[F::k11b]);
  out[F::k22b] = -cj(beta[F::k22b]);
  out[F::k12b] = -cj(beta[F::k21b]);
  out[F::k21b] = -cj(beta[F::k12b]);
  return out;
}

/// Real iff conj(beta) = beta; PureImaginaryValued (u(1)-valued) iff
/// conj(beta) = -beta. In floating mode the comparison uses tol * max(1, |beta|).
template <class S>
RealityClass reality_class(const TwoForm<S>& beta, double tol = 1e-12) {
  TwoForm<S> cb = conjugate(beta);
  const double scale = tol * std::max(1.0, beta.norm());
  auto all_zero = [&](const TwoForm<S>& f) {
    for (int k = 0; k < 6; ++k)
      if (!near_zero(f[k], scale)) return false;
    return true;
  };
  // The zero form is both; report it as Real.
  if (all_zero(cb - beta)) return RealityClass::Real;
  if (all_zero(cb + beta)) return RealityClass::PureImaginaryValued;
  return RealityClass::Neither;
}

/// Hermitian pointwise inner product <x, y> = sum_k conj(x_k) y_k. The
/// monomials are orthonormal in the unitary coframe.
template <class S>
S form_inner(const TwoForm<S>& x, const TwoForm<S>& y) {
  S s(0);
  for (int k = 0; k < 6; ++k) s += ScalarTraits<S>::conj(x[k]) * y[k];
  return s;
}

namespace detail {

template <class S>
using Vec4 = Eigen::Matrix<S, 4, 1>;
template <class S>
using Mat4 = Eigen::Matrix<S, 4, 4>;

// Components of xi^1, xi^2, xib^1, xib^2 in the real orthonormal coframe
// e^1..e^4, with xi^j = (e^{2j-1} + i e^{2j}) / sqrt2.
template <class S>
std::array<Vec4<S>, 4> complex_coframe() {
  const S r = S(1) / ScalarTraits<S>::sqrt2();
  const S ir = ScalarTraits<S>::i() * r;
  Vec4<S> xi1, xi2, xb1, xb2;
  xi1 << r, ir, S(0), S(0);
  xi2 << S(0), S(0), r, ir;
  xb1 << r, -ir, S(0), S(0);
  xb2 << S(0), S(0), r, -ir;
  return {xi1, xi2, xb1, xb2};
}

// Slot k of TwoForm as a pair of indices into complex_coframe().
constexpr std::array<std::array<int, 2>, 6> kSlotFactors = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

template <class S>
Mat4<S> to_real_frame(const TwoForm<S>& beta) {
  auto frame = complex_coframe<S>();
  Mat4<S> f = Mat4<S>::Zero();
  for (int k = 0; k < 6; ++k) {
    const auto& x = frame[kSlotFactors[k][0]];
    const auto& y = frame[kSlotFactors[k][1]];
    f += beta[k] * (x * y.transpose() - y * x.transpose());
  }
  return f;
}

template <class S>
TwoForm<S> from_real_frame(const Mat4<S>& f) {
  // Dual frame vectors: the dual of xi^j is conj(xi^j), the dual of xib^j is xi^j.
  auto frame = complex_coframe<S>();
  std::array<Vec4<S>, 4> dual = {frame[2], frame[3], frame[0], frame[1]};
  TwoForm<S> beta;
  for (int k = 0; k < 6; ++k) {
    const auto& x = dual[kSlotFactors[k][0]];
    const auto& y = dual[kSlotFactors[k][1]];
    beta[k] = (x.transpose() * f * y)(0, 0);
  }
  return beta;
}


template <class S>
TwoForm<S> hodge_star_real_frame(const TwoForm<S>& beta) {
  detail::Mat4<S> f = detail::to_real_frame(beta);
  detail::Mat4<S> star = detail::Mat4<S>::Zero();
  // (*F)_{ab} = 1/2 eps_{abcd} F_{cd}; for each pair (a,b) the complementary
  // pair (c,d) with eps_{abcd} = +1 gives (*F)_{ab} = F_{cd}.
  constexpr std::array<std::array<int, 4>, 3> even_perms = {{{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}}};
  for (const auto& p : even_perms) {
    star(p[0], p[1]) = f(p[2], p[3]);
    star(p[1], p[0]) = -f(p[2], p[3]);
    star(p[2], p[3]) = f(p[0], p[1]);
    star(p[3], p[2]) = -f(p[0], p[1]);
  }
  return detail::from_real_frame(star);
}

/// Images of the six basis monomials, built once per scalar type.
template <class S>
const std::array<TwoForm<S>, 6>& star_table() {
  static const std::array<TwoForm<S>, 6> table = [] {
    std::array<TwoForm<S>, 6> t;
    for (int k = 0; k < 6; ++k) t[k] = hodge_star_real_frame(TwoForm<S>::monomial(static_cast<typename TwoForm<S>::Slot>(k)));
    return t;
  }();
  return table;
}

}  // namespace detail

/// Hodge star of the flat metric, orientation e^1^e^2^e^3^e^4.
template <class S>
TwoForm<S> hodge_star(const TwoForm<S>& beta) {
  const auto& table = detail::star_table<S>();
  TwoForm<S> out;
  for (int k = 0; k < 6; ++k) {
    if (ScalarTraits<S>::is_zero(beta[k])) continue;
    for (int j = 0; j < 6; ++j)
      if (!ScalarTraits<S>::is_zero(table[k][j])) out[j] += beta[k] * table[k][j];
  }
  return out;
}

}  // namespace spinlab
