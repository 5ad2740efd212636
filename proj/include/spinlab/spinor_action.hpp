#pragma once

// Explicit block matrices for the action of (1,1)-forms on spinors, action
// spectra, and the definiteness classifier behind the indefiniteness theorem
// for U(1) curvature on Kahler surfaces.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "spinlab/fiber_algebra.hpp"
#include "spinlab/form_decomposition.hpp"

namespace spinlab {

/// Coefficients of a form in Omega^{1,1}_0 over {xi1^xib2, xi2^xib1, xi1^xib1 - xi2^xib2}.
template <class S>
struct AsdCoefficients {
  S a{}, b{}, c{};
};

template <class S>
AsdCoefficients<S> asd_coefficients(const Decomposition<S>& d) {
  return {d.a, d.b, d.c};
}

enum class Definiteness {
  Zero,
  Indefinite,
  PositiveSemidefinite,
  NegativeSemidefinite,
  PositiveDefinite,
  NegativeDefinite,
  NonHermitian
};

inline const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::Zero: return "Zero";
    case Definiteness::Indefinite: return "Indefinite";
    case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
    case Definiteness::NegativeSemidefinite: return "NegativeSemidefinite";
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
    case Definiteness::NegativeDefinite: return "NegativeDefinite";
    default: return "NonHermitian";
  }
}

using Spectrum = std::array<Complex, 4>;

struct DefinitenessVerdict {
  Definiteness verdict = Definiteness::Zero;
  Spectrum eigenvalues{};
};

/// Raised by matrix_on_S_plus / cross_check_blocks for forms with (2,0) or (0,2) content.
class FormTypeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FormRequirement { SD, ASD, Any11 };

enum class PreconditionViolation { WrongRealityClass, NotType11, WrongSdAsdType, ZeroForm };

inline const char* to_string(PreconditionViolation v) {
  switch (v) {
    case PreconditionViolation::WrongRealityClass: return "WrongRealityClass";
    case PreconditionViolation::NotType11: return "NotType11";
    case PreconditionViolation::WrongSdAsdType: return "WrongSdAsdType";
    default: return "ZeroForm";
  }
}

class TheoremPreconditionError : public std::invalid_argument {
 public:
  TheoremPreconditionError(PreconditionViolation v, const std::string& what)
      : std::invalid_argument(what), violation_(v) {}
  PreconditionViolation violation() const { return violation_; }

 private:
  PreconditionViolation violation_;
};

/// Floating comparisons in this module use these.
inline constexpr double kAlgebraTolerance = 1e-12;
inline constexpr double kZeroEigenvalueTolerance = 1e-9;

template <class S>
bool is_type11(const TwoForm<S>& beta, double tol = kAlgebraTolerance) {
  using F = TwoForm<S>;
  const double scale = tol * std::max(1.0, beta.norm());
  return near_zero(beta[F::k12], scale) && near_zero(beta[F::k1b2b], scale);
}

/// Action on S- = span{xib^1, xib^2}: 2 [[c, b], [a, -c]].
template <class S>
Block2<S> matrix_on_S_minus(const AsdCoefficients<S>& k) {
  Block2<S> m;
  m << k.c, k.b, k.a, -k.c;
  return S(2) * m;
}

/// Action of a (1,1)-form on S+ = span{1, xib^1^xib^2}: diag(-i Lambda beta, +i Lambda beta).
template <class S>
Block2<S> matrix_on_S_plus(const TwoForm<S>& beta) {
  if (!is_type11(beta))
    throw FormTypeError("matrix_on_S_plus: form has (2,0)/(0,2) content, which acts off-diagonally");
  const S il = ScalarTraits<S>::i() * contract_lambda(beta);
  Block2<S> m = Block2<S>::Zero();
  m(0, 0) = -il;
  m(1, 1) = il;
  return m;
}

namespace detail {

inline Spectrum sorted_spectrum(const Eigen::Matrix<Complex, 4, 1>& v) {
  Spectrum s = {v(0), v(1), v(2), v(3)};
  std::sort(s.begin(), s.end(), [](const Complex& x, const Complex& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return s;
}

template <class S>
bool is_hermitian(const ActionMatrix<S>& m, double tol) {
  const ActionMatrix<S> diff = m - conjugate_transpose(m);
  const double scale = tol * std::max(1.0, max_abs(m));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!near_zero(diff(i, j), scale)) return false;
  return true;
}

}  // namespace detail

/// Eigenvalues of operator_matrix(beta) with multiplicity, sorted by (re, im).
template <class S>
Spectrum action_spectrum(const TwoForm<S>& beta) {
  const Eigen::Matrix<Complex, 4, 4> m = to_complex(operator_matrix(beta));
  Eigen::ComplexEigenSolver<Eigen::Matrix<Complex, 4, 4>> solver(m, false);
  return detail::sorted_spectrum(solver.eigenvalues());
}

/// Classifies a Hermitian 4x4 matrix by the signs of its eigenvalues.
/// `scale` sets the zero cutoff |lambda| <= kZeroEigenvalueTolerance * scale.
inline DefinitenessVerdict classify_matrix(const Eigen::Matrix<Complex, 4, 4>& m, double scale,
                                           bool hermitian) {
  DefinitenessVerdict out;
  if (!hermitian) {
    Eigen::ComplexEigenSolver<Eigen::Matrix<Complex, 4, 4>> solver(m, false);
    out.eigenvalues = detail::sorted_spectrum(solver.eigenvalues());
    out.verdict = Definiteness::NonHermitian;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, 4, 4>> solver(m, Eigen::EigenvaluesOnly);
  const Eigen::Vector4d ev = solver.eigenvalues();
  const double cutoff = kZeroEigenvalueTolerance * scale;
  int pos = 0, neg = 0;
  for (int k = 0; k < 4; ++k) {
    out.eigenvalues[k] = Complex(ev(k), 0.0);
    if (ev(k) > cutoff) ++pos;
    if (ev(k) < -cutoff) ++neg;
  }
  if (pos > 0 && neg > 0) out.verdict = Definiteness::Indefinite;
  else if (pos == 4) out.verdict = Definiteness::PositiveDefinite;
  else if (neg == 4) out.verdict = Definiteness::NegativeDefinite;
  else if (pos > 0) out.verdict = Definiteness::PositiveSemidefinite;
  else if (neg > 0) out.verdict = Definiteness::NegativeSemidefinite;
  else out.verdict = Definiteness::Zero;
  return out;
}

template <class S>
DefinitenessVerdict classify(const TwoForm<S>& beta) {
  const ActionMatrix<S> m = operator_matrix(beta);
  const bool hermitian = detail::is_hermitian(m, kAlgebraTolerance);
  return classify_matrix(to_complex(m), beta.norm(), hermitian);
}

/// Checks the indefiniteness theorem on one form. Throws
/// TheoremPreconditionError when beta is outside its hypotheses.
template <class S>
bool theorem_main_check(const TwoForm<S>& beta, FormRequirement require = FormRequirement::Any11) {
  if (beta.is_zero() || beta.norm() == 0.0)
    throw TheoremPreconditionError(PreconditionViolation::ZeroForm, "form is zero");
  if (reality_class(beta) != RealityClass::PureImaginaryValued)
    throw TheoremPreconditionError(PreconditionViolation::WrongRealityClass,
                                   std::string("form is not u(1)-valued (reality class ") +
                                       to_string(reality_class(beta)) + ")");
  if (!is_type11(beta))
    throw TheoremPreconditionError(PreconditionViolation::NotType11, "form has (2,0)/(0,2) content");
  if (require != FormRequirement::Any11) {
    const Decomposition<S> d = decompose(beta);
    const double scale = kAlgebraTolerance * std::max(1.0, beta.norm());
    const bool sd = near_zero(d.a, scale) && near_zero(d.b, scale) && near_zero(d.c, scale);
    const bool asd = near_zero(d.trace, scale);
    if (require == FormRequirement::SD && !sd)
      throw TheoremPreconditionError(PreconditionViolation::WrongSdAsdType, "form is not self-dual");
    if (require == FormRequirement::ASD && !asd)
      throw TheoremPreconditionError(PreconditionViolation::WrongSdAsdType, "form is not anti-self-dual");
  }
  return classify(beta).verdict == Definiteness::Indefinite;
}

struct BlockResiduals {
  double odd = 0.0;
  double even = 0.0;
};

/// Compares the Clifford-engine blocks of operator_matrix(beta) against the
/// closed-form S- and S+ matrices.
template <class S>
BlockResiduals cross_check_blocks(const TwoForm<S>& beta) {
  if (!is_type11(beta)) throw FormTypeError("cross_check_blocks: form is not of type (1,1)");
  const ActionMatrix<S> m = operator_matrix(beta);
  const Decomposition<S> d = decompose(beta);
  BlockResiduals r;
  r.odd = max_abs(Block2<S>(odd_block(m) - matrix_on_S_minus(asd_coefficients(d))));
  r.even = max_abs(Block2<S>(even_block(m) - matrix_on_S_plus(beta)));
  return r;
}

/// Principal-branch +-2 sqrt(c^2 + ab), the nonzero S- eigenvalues of an ASD form.
template <class S>
std::array<Complex, 2> asd_eigenvalue_pair(const AsdCoefficients<S>& k) {
  const Complex a = ScalarTraits<S>::to_complex(k.a);
  const Complex b = ScalarTraits<S>::to_complex(k.b);
  const Complex c = ScalarTraits<S>::to_complex(k.c);
  const Complex r = 2.0 * std::sqrt(c * c + a * b);
  return {r, -r};
}

}  // namespace spinlab
