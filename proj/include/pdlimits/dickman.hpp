#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pdlimits/function_table.hpp"
#include "pdlimits/quadrature.hpp"
#include "pdlimits/special.hpp"

namespace pdl {

namespace detail {

/// History lookup against the partially filled grid during integration.
/// s is always at least (1 - step) behind the integration front, so the
/// needed stencil is available.  Stencils stay inside one unit interval;
/// both rho and g_theta are analytic there.
inline double delay_history(const std::vector<double>& vals, int per_unit, double s,
                            TableKind kind, double theta) {
  if (s <= 1.0) {
    if (kind == TableKind::dickman_rho) return 1.0;
    return std::exp(-kEulerGamma * theta) * std::pow(s, theta - 1.0) / gamma_fn(theta);
  }
  const double pos = s * per_unit;
  long long j = static_cast<long long>(pos);
  long long piece_lo = (j / per_unit) * per_unit;
  long long i0 = j - 1;
  if (i0 < piece_lo) i0 = piece_lo;
  if (i0 > piece_lo + per_unit - 3) i0 = piece_lo + per_unit - 3;
  const double u = pos - static_cast<double>(i0);
  const double c0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
  const double c1 = u * (u - 2) * (u - 3) / 2.0;
  const double c2 = -u * (u - 1) * (u - 3) / 2.0;
  const double c3 = u * (u - 1) * (u - 2) / 6.0;
  const std::size_t b = static_cast<std::size_t>(i0);
  return c0 * vals[b] + c1 * vals[b + 1] + c2 * vals[b + 2] + c3 * vals[b + 3];
}

}  // namespace detail

/// Dickman rho on [0, t_max].  rho = 1 on [0,1]; past 1 the integral
/// recurrence t*rho(t) = int_{t-1}^t rho is stepped in its differentiated
/// form t*rho'(t) = -rho(t-1) with classic RK4 and cubic history lookups.
/// Steps never straddle the integer joints where higher derivatives jump.
inline FunctionTable solve_dickman(double t_max, double step = 1e-3) {
  if (!(t_max >= 1.0)) throw std::domain_error("solve_dickman: t_max must be >= 1");
  if (!(step > 0.0) || step > 1e-3)
    throw std::domain_error("solve_dickman: step must be in (0, 1e-3]");
  const int per_unit = static_cast<int>(std::ceil(1.0 / step - 1e-9));
  const int units = static_cast<int>(std::ceil(t_max - 1e-9));
  const std::size_t count = static_cast<std::size_t>(per_unit) * units + 1;
  std::vector<double> vals(count, 1.0);
  const double h = 1.0 / per_unit;
  for (std::size_t i = per_unit; i + 1 < count; ++i) {
    const double t = static_cast<double>(i) * h;
    const auto slope = [&](double tt) {
      return -detail::delay_history(vals, per_unit, tt - 1.0, TableKind::dickman_rho, 1.0) / tt;
    };
    const double k1 = slope(t);
    const double k2 = slope(t + 0.5 * h);  // no y-dependence: k3 == k2
    const double k4 = slope(t + h);
    vals[i + 1] = vals[i] + h / 6.0 * (k1 + 4.0 * k2 + k4);
  }
  return FunctionTable(TableKind::dickman_rho, 1.0, per_unit, std::move(vals));
}

/// g_theta on [0, t_max]: the boundary branch e^{-gamma theta} t^{theta-1}
/// / Gamma(theta) on (0,1], then the delay ODE
/// t*g'(t) = (theta-1)*g(t) - theta*g(t-1).  For theta < 1 the stored t=0
/// entry is the (infinite) limit of the boundary branch; evaluation on
/// (0,1] uses the closed form, never that entry.  Note g has a (t-1)^theta
/// cusp at t = 1 when theta < 1, so interpolated values in the first few
/// cells past 1 are good to ~1e-6 rather than grid accuracy; grid values
/// themselves come from the exact integrating-factor form.
inline FunctionTable solve_gtheta(double theta, double t_max, double step = 1e-3) {
  if (!(theta > 0.0)) throw std::domain_error("solve_gtheta: theta must be positive");
  if (!(t_max >= 1.0)) throw std::domain_error("solve_gtheta: t_max must be >= 1");
  if (!(step > 0.0) || step > 1e-3)
    throw std::domain_error("solve_gtheta: step must be in (0, 1e-3]");
  const int per_unit = static_cast<int>(std::ceil(1.0 / step - 1e-9));
  const int units = static_cast<int>(std::ceil(t_max - 1e-9));
  const std::size_t count = static_cast<std::size_t>(per_unit) * units + 1;
  std::vector<double> vals(count, 0.0);
  const double h = 1.0 / per_unit;
  const double norm = std::exp(-kEulerGamma * theta) / gamma_fn(theta);
  for (int i = 0; i <= per_unit; ++i) {
    const double t = static_cast<double>(i) * h;
    vals[i] = t == 0.0 ? (theta > 1.0 ? 0.0
                          : theta == 1.0 ? norm
                                         : std::numeric_limits<double>::infinity())
                       : norm * std::pow(t, theta - 1.0);
  }
  std::size_t start = per_unit;
  if (theta < 1.0 && count > static_cast<std::size_t>(per_unit) + 1) {
    // The delayed term g(t-1) diverges as t -> 1+ when theta < 1, so RK4
    // cannot start there.  On [1,2] the ODE is linear with an explicit
    // integrating factor:
    //   g(t) = t^{theta-1} (g(1) - norm * J((t-1)^theta)),
    //   J(W) = int_0^W (1 + w^{1/theta})^{-theta} dw  (bounded integrand).
    double J = 0.0;
    double w_prev = 0.0;
    const std::size_t stop = std::min(count - 1, static_cast<std::size_t>(2) * per_unit);
    for (std::size_t i = per_unit + 1; i <= stop; ++i) {
      const double t = static_cast<double>(i) * h;
      const double w_cur = std::pow(t - 1.0, theta);
      J += integrate([&](double w) { return std::pow(1.0 + std::pow(w, 1.0 / theta), -theta); },
                     w_prev, w_cur, 1e-14);
      w_prev = w_cur;
      vals[i] = std::pow(t, theta - 1.0) * (norm - norm * J);
    }
    start = stop;
  }
  for (std::size_t i = start; i + 1 < count; ++i) {
    const double t = static_cast<double>(i) * h;
    const auto slope = [&](double tt, double y) {
      return ((theta - 1.0) * y -
              theta * detail::delay_history(vals, per_unit, tt - 1.0, TableKind::g_theta, theta)) /
             tt;
    };
    const double y = vals[i];
    const double k1 = slope(t, y);
    const double k2 = slope(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = slope(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = slope(t + h, y + h * k3);
    vals[i + 1] = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return FunctionTable(TableKind::g_theta, theta, per_unit, std::move(vals));
}

}  // namespace pdl
