#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdl {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an operation refuses to run because its estimated cost
/// exceeds a safety guard.  Distinct from validation errors so the CLI
/// can map it to its own exit code.
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

inline Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Shared process-wide factorial cache for hot paths that request n! for
/// many nearby n (moment products, enumeration weights).
inline const Integer& factorial_cached(int n) {
  static std::mutex mu;
  static std::vector<Integer> cache{1, 1};
  std::lock_guard<std::mutex> lk(mu);
  while (static_cast<int>(cache.size()) <= n)
    cache.push_back(cache.back() * static_cast<int>(cache.size()));
  return cache[n];
}

inline Integer binomial(const Integer& n, int k) {
  if (k < 0 || n < 0 || Integer(k) > n) return 0;
  Integer r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - (k - i);
    r /= i;  // exact at every step
  }
  return r;
}

inline Rational rational_pow(const Rational& x, int e) {
  if (e < 0) {
    if (x == 0) throw std::domain_error("rational_pow: 0^negative");
    return 1 / rational_pow(x, -e);
  }
  Rational r = 1, b = x;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// log of a positive big integer, usable far outside double range.
inline double log_double(const Integer& v) {
  if (v <= 0) throw std::domain_error("log_double: nonpositive");
  const std::size_t bits = msb(v);  // boost: index of highest set bit
  if (bits <= 900) return std::log(v.convert_to<double>());
  const Integer shifted = v >> (bits - 64);
  return std::log(shifted.convert_to<double>()) +
         static_cast<double>(bits - 64) * 0.6931471805599453;
}

inline double to_double(const Rational& x) {
  const Integer num = numerator(x), den = denominator(x);
  if (num == 0) return 0.0;
  const bool neg = num < 0;
  const double lg = log_double(neg ? Integer(-num) : num) - log_double(den);
  if (lg < 700.0 && lg > -700.0) {
    double d = num.convert_to<double>() / den.convert_to<double>();
    if (std::isfinite(d)) return d;
  }
  const double mag = std::exp(lg);
  return neg ? -mag : mag;
}

/// Exact text form: "p" when integral, else "p/q".
inline std::string to_string_exact(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

/// Parse decimal strings ("0.35", "2", "-1.5e-2" not supported) exactly.
inline Rational rational_from_decimal(const std::string& s) {
  std::string t = s;
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  const auto slash = t.find('/');
  if (slash != std::string::npos) {
    Rational r = Rational(Integer(t.substr(0, slash)), Integer(t.substr(slash + 1)));
    return neg ? -r : r;
  }
  const auto dot = t.find('.');
  Rational r;
  if (dot == std::string::npos) {
    r = Rational(Integer(t));
  } else {
    const std::string ip = dot == 0 ? "0" : t.substr(0, dot);
    const std::string fp = t.substr(dot + 1);
    if (fp.empty()) {
      r = Rational(Integer(ip));
    } else {
      Integer den = 1;
      for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
      r = Rational(Integer(ip) * den + Integer(fp), den);
    }
  }
  return neg ? -r : r;
}

}  // namespace pdl
