#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "belief/error.hpp"

namespace belief {

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Renders "p/q", or just "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

inline BigInt parse_integer(std::string_view text, bool allow_sign, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (allow_sign && !text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size())
    throw Error(Errc::SyntaxError, "malformed rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const auto c = static_cast<unsigned char>(text[pos]);
    if (!std::isdigit(c))
      throw Error(Errc::SyntaxError, "malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace detail

/// Parses "p/q" or an integer "p". No whitespace; the denominator must be a
/// positive unsigned integer.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(text, true, text));
  const BigInt num = detail::parse_integer(text.substr(0, slash), true, text);
  const BigInt den = detail::parse_integer(text.substr(slash + 1), false, text);
  if (den == 0) throw Error(Errc::SyntaxError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace belief
