#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "liftgap/error.hpp"

namespace liftgap {

/// Exact rational backed by GMP; always canonical (positive denominator, reduced).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw Error(ErrorKind::InvalidParams, "zero denominator");
  return Rational(Integer(num), Integer(den));
}

/// Renders as `p/q` (integers too, e.g. `1/1`).
inline std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = slash == std::string_view::npos ? text : text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  num = trim(num);
  den = trim(den);
  if (!valid_int(num) || !valid_int(den))
    throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
  auto strip_plus = [](std::string_view s) { return (!s.empty() && s.front() == '+') ? s.substr(1) : s; };
  Integer n(std::string(strip_plus(num)));
  Integer d(std::string(strip_plus(den)));
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

/// Best rational approximation with bounded denominator (continued fractions).
inline Rational rational_from_double(double x, std::int64_t max_denominator = 1'000'000) {
  const bool negative = x < 0;
  if (negative) x = -x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(frac);
    if (a_d > 9.0e15) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    const std::int64_t p2 = p0 + a * p1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double rem = frac - a_d;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rational(0);
  Rational r = make_rational(p1, q1);
  return negative ? Rational(-r) : r;
}

}  // namespace liftgap
