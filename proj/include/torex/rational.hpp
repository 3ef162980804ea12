#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace torex {

// Exact arbitrary-precision arithmetic. cpp_rational keeps every value in
// lowest terms with a positive denominator, so equality is bitwise-meaningful.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& r) { return numerator(r); }
inline Integer rat_den(const Rational& r) { return denominator(r); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Nearest double; the only place exactness is deliberately given up
/// (human-readable output and statistical comparisons).
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Largest integer <= r.
inline Integer floor_int(const Rational& r) {
  Integer q = numerator(r) / denominator(r);  // truncates toward zero
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline Integer ceil_int(const Rational& r) { return -floor_int(-r); }

/// r reduced into [0,1): r - floor(r).
inline Rational frac01(const Rational& r) { return r - Rational(floor_int(r)); }

/// Distance from r to the nearest integer, in [0, 1/2].
inline Rational dist_to_integers(const Rational& r) {
  Rational f = frac01(r);
  Rational g = 1 - f;
  return f <= g ? f : g;
}

/// Render as "numerator/denominator", lowest terms, denominator always
/// explicit ("3" prints as "3/1"). This is the machine format used in CSV
/// and JSON output; it round-trips through parse_rational.
inline std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parse "p/q" or a bare integer "p" (optional leading sign). Returns
/// nullopt on malformed input or a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  size_t b = 0, e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
  if (b == e) return std::nullopt;
  std::string_view s = text.substr(b, e - b);

  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  size_t num_begin = i;
  while (i < s.size() && is_digit(s[i])) ++i;
  if (i == num_begin) return std::nullopt;
  Integer num(std::string(s.substr(num_begin, i - num_begin)));
  if (neg) num = -num;

  Integer den = 1;
  if (i < s.size()) {
    if (s[i] != '/') return std::nullopt;
    ++i;
    size_t den_begin = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == den_begin || i != s.size()) return std::nullopt;
    den = Integer(std::string(s.substr(den_begin, i - den_begin)));
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

}  // namespace torex
