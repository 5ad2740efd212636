#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>

namespace spinlab {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::mpq_rational;

/// Real number of the form p + q*sqrt(2) with rational p, q.
class QuadraticRational {
 public:
  QuadraticRational() = default;
  QuadraticRational(Rational rational, Rational surd = 0)
      : rational_(std::move(rational)), surd_(std::move(surd)) {}

  const Rational& rational_part() const { return rational_; }
  const Rational& surd_part() const { return surd_; }

  bool is_zero() const { return rational_ == 0 && surd_ == 0; }

  double to_double() const {
    return static_cast<double>(rational_) + static_cast<double>(surd_) * std::sqrt(2.0);
  }

  QuadraticRational operator-() const { return {-rational_, -surd_}; }

  friend QuadraticRational operator+(const QuadraticRational& x, const QuadraticRational& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    return {x.rational_ + y.rational_, x.surd_ + y.surd_};
  }
  friend QuadraticRational operator-(const QuadraticRational& x, const QuadraticRational& y) {
    if (y.is_zero()) return x;
    return {x.rational_ - y.rational_, x.surd_ - y.surd_};
  }
  friend QuadraticRational operator*(const QuadraticRational& x, const QuadraticRational& y) {
    if (x.is_zero() || y.is_zero()) return {};
    const bool xs = x.surd_ != 0, ys = y.surd_ != 0;
    if (!xs && !ys) return {x.rational_ * y.rational_, 0};
    if (!xs) return {x.rational_ * y.rational_, x.rational_ * y.surd_};
    if (!ys) return {x.rational_ * y.rational_, x.surd_ * y.rational_};
    return {x.rational_ * y.rational_ + 2 * x.surd_ * y.surd_,
            x.rational_ * y.surd_ + x.surd_ * y.rational_};
  }
  // p^2 - 2 q^2 vanishes only at zero because sqrt(2) is irrational.
  QuadraticRational inverse() const {
    Rational norm = rational_ * rational_ - 2 * surd_ * surd_;
    return {rational_ / norm, -surd_ / norm};
  }
  friend QuadraticRational operator/(const QuadraticRational& x, const QuadraticRational& y) {
    return x * y.inverse();
  }
  friend bool operator==(const QuadraticRational& x, const QuadraticRational& y) {
    return x.rational_ == y.rational_ && x.surd_ == y.surd_;
  }

 private:
  Rational rational_ = 0;
  Rational surd_ = 0;
};

/// Exact element of the field Q(i, sqrt 2).
///
/// Every coefficient that appears in the fiber algebra (the sqrt(2) factors of
/// the one-form action, the 1/2 of antisymmetrization, the i of the Kahler
/// form) lives in this field, so identities can be checked with equality
/// instead of tolerances.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(int value) : re_(Rational(value)) {}
  ExactComplex(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}
  ExactComplex(QuadraticRational re, QuadraticRational im) : re_(std::move(re)), im_(std::move(im)) {}

  static ExactComplex sqrt2() { return {QuadraticRational(0, 1), QuadraticRational()}; }
  static ExactComplex i() { return {Rational(0), Rational(1)}; }

  const QuadraticRational& real() const { return re_; }
  const QuadraticRational& imag() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  Complex to_complex() const { return {re_.to_double(), im_.to_double()}; }

  ExactComplex operator-() const { return {-re_, -im_}; }
  ExactComplex& operator+=(const ExactComplex& o) { return *this = *this + o; }
  ExactComplex& operator-=(const ExactComplex& o) { return *this = *this - o; }
  ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }
  ExactComplex& operator/=(const ExactComplex& o) { return *this = *this / o; }

  friend ExactComplex operator+(const ExactComplex& x, const ExactComplex& y) {
    return {x.re_ + y.re_, x.im_ + y.im_};
  }
  friend ExactComplex operator-(const ExactComplex& x, const ExactComplex& y) {
    return {x.re_ - y.re_, x.im_ - y.im_};
  }
  friend ExactComplex operator*(const ExactComplex& x, const ExactComplex& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.im_.is_zero() && y.im_.is_zero()) return {x.re_ * y.re_, QuadraticRational()};
    return {x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_};
  }
  friend ExactComplex operator/(const ExactComplex& x, const ExactComplex& y) {
    QuadraticRational norm = y.re_ * y.re_ + y.im_ * y.im_;
    ExactComplex num = x * conj(y);
    return {num.re_ / norm, num.im_ / norm};
  }
  friend bool operator==(const ExactComplex& x, const ExactComplex& y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }
  friend bool operator!=(const ExactComplex& x, const ExactComplex& y) { return !(x == y); }

  friend ExactComplex conj(const ExactComplex& z) { return {z.re_, -z.im_}; }

  friend std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

 private:
  QuadraticRational re_;
  QuadraticRational im_;
};

inline std::ostream& operator<<(std::ostream& os, const QuadraticRational& q) {
  os << q.rational_part();
  if (q.surd_part() != 0) os << (q.surd_part() > 0 ? "+" : "") << q.surd_part() << "*sqrt2";
  return os;
}

inline std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
  return os << "(" << z.re_ << ")+i(" << z.im_ << ")";
}

/// Parses a decimal literal ("-1.25", "3e-2", "7/8") into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Uniform access to the two arithmetic modes: std::complex<double> and
/// ExactComplex.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool is_exact = false;
  static constexpr const char* mode_name = "float";
  static Complex sqrt2() { return {std::sqrt(2.0), 0.0}; }
  static Complex i() { return {0.0, 1.0}; }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static Complex to_complex(const Complex& z) { return z; }
  static Complex from_parts(double re, double im) { return {re, im}; }
  static Complex from_ratio(long num, long den) { return {static_cast<double>(num) / den, 0.0}; }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  static bool is_real(const Complex& z, double tol) { return std::abs(z.imag()) <= tol; }
};

template <>
struct ScalarTraits<ExactComplex> {
  static constexpr bool is_exact = true;
  static constexpr const char* mode_name = "exact";
  static ExactComplex sqrt2() { return ExactComplex::sqrt2(); }
  static ExactComplex i() { return ExactComplex::i(); }
  static ExactComplex conj(const ExactComplex& z) { return {z.real(), -z.imag()}; }
  static Complex to_complex(const ExactComplex& z) { return z.to_complex(); }
  static ExactComplex from_parts(double re, double im) { return {Rational(re), Rational(im)}; }
  static ExactComplex from_ratio(long num, long den) { return {Rational(num, den), Rational(0)}; }
  static bool is_zero(const ExactComplex& z) { return z.is_zero(); }
  static bool is_real(const ExactComplex& z, double) { return z.imag().is_zero(); }
};

/// Magnitude used for residual reports. Exact nonzero values never report 0.
template <class S>
double magnitude(const S& z) {
  double m = std::abs(ScalarTraits<S>::to_complex(z));
  if constexpr (ScalarTraits<S>::is_exact) {
    if (m == 0.0 && !z.is_zero()) return std::numeric_limits<double>::denorm_min();
  }
  return m;
}

/// True when |z| <= tol in floating mode, or z == 0 in exact mode.
template <class S>
bool near_zero(const S& z, double tol) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return z.is_zero();
  } else {
    return std::abs(z) <= tol;
  }
}

}  // namespace spinlab

namespace Eigen {

template <>
struct NumTraits<spinlab::ExactComplex> : GenericNumTraits<spinlab::ExactComplex> {
  using Real = spinlab::ExactComplex;
  using NonInteger = spinlab::ExactComplex;
  using Literal = spinlab::ExactComplex;
  using Nested = spinlab::ExactComplex;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
