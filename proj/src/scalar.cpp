#include "spinlab/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace spinlab {

namespace {

Rational parse_decimal(std::string_view text, std::string_view whole) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  };
  if (text.empty()) return fail();

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';

  boost::multiprecision::mpz_int mantissa = 0;
  int scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa = mantissa * 10 + (ch - '0');
      if (seen_point) ++scale;
      any_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();

  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    const std::string rest(text.substr(pos + 1));
    if (rest.empty()) return fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(rest, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != rest.size() || exponent > 4000 || exponent < -4000) return fail();
  }

  const long power = exponent - scale;
  Rational value(mantissa);
  const boost::multiprecision::mpz_int ten_pow = boost::multiprecision::pow(
      boost::multiprecision::mpz_int(10), static_cast<unsigned>(power < 0 ? -power : power));
  value = power < 0 ? value / Rational(ten_pow) : value * Rational(ten_pow);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, text);
  const Rational num = parse_decimal(text.substr(0, slash), text);
  const Rational den = parse_decimal(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return num / den;
}

}  // namespace spinlab
