/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The pts authors
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "error.hpp"

namespace pts {

/// Exact arbitrary-precision rational, always kept in reduced form.
using Rational = boost::multiprecision::cpp_rational;

/// Team and weight-function values. Nonnegativity is enforced by the
/// containers that store weights, not by the type.
using Weight = Rational;

inline Rational rational(long long num, long long den = 1) {
  return Rational(num) / Rational(den);
}

/// Parses "p", "-p" or "p/q" (no decimals).
inline Rational parse_rational(std::string_view text) {
  auto digits = [&](std::string_view s) {
    if (s.empty())
      return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
      return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits(num) || !digits(den) || den[0] == '-' || den[0] == '+')
    throw Error("malformed rational '" + std::string(text) + "'");
  boost::multiprecision::cpp_int n(std::string(num[0] == '+' ? num.substr(1) : num));
  boost::multiprecision::cpp_int d{std::string(den)};
  if (d == 0)
    throw Error("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

/// Renders as "p" for integers and "p/q" otherwise.
inline std::string to_string(const Rational &r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1)
    return num.str();
  return num.str() + "/" + den.str();
}

} // namespace pts
