#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace pdl {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;

inline double log_gamma(double x) { return std::lgamma(x); }
inline double gamma_fn(double x) { return std::tgamma(x); }

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  if (a < b) {
    const double t = a;
    a = b;
    b = t;
  }
  return a + std::log1p(std::exp(b - a));
}

inline double log_sum(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs)
    if (x > m) m = x;
  if (m == -std::numeric_limits<double>::infinity()) return m;
  double s = 0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

/// sum_{lo < j <= hi} 1/j
inline double harmonic_window(long long lo, long long hi) {
  double s = 0;
  for (long long j = hi; j > lo; --j) s += 1.0 / static_cast<double>(j);
  return s;
}

}  // namespace pdl
