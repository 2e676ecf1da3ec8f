#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace pdl {

namespace detail {

template <class F>
double adapt_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adapt_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f on [a,b] to absolute tolerance tol.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-10, int max_depth = 48) {
  if (!(b >= a)) throw std::domain_error("integrate: b < a");
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return detail::adapt_simpson(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace pdl
