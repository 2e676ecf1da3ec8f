#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pdlimits/dickman.hpp"
#include "pdlimits/function_table.hpp"
#include "pdlimits/quadrature.hpp"
#include "pdlimits/special.hpp"
#include "pdlimits/stick_breaking.hpp"

namespace pdl {

/// f_{theta,k}(x_1..x_k) on {1 >= x_1 >= ... >= x_k > 0, sum <= 1}:
///   e^{gamma theta} theta^k Gamma(theta) x_k^{theta-1} / (x_1...x_k)
///     * g_theta((1 - sum x) / x_k).
/// Returns 0 outside the support.  The g table must cover the rescaled
/// argument; arguments past the end are accepted only when the stored tail
/// is negligible (range_error otherwise).
inline double density_f_theta_k(const PDParams& p, std::span<const double> x,
                                const FunctionTable& g_table) {
  validate(p);
  if (g_table.kind() != TableKind::g_theta || g_table.theta() != p.theta)
    throw std::domain_error("density_f_theta_k: table is not g_theta for this theta");
  if (x.empty()) throw std::domain_error("density_f_theta_k: empty point");
  double sum = 0.0, prev = 1.0;
  for (double xi : x) {
    if (xi > prev || xi > 1.0) return 0.0;
    if (!(xi > 0.0)) return 0.0;
    sum += xi;
    prev = xi;
  }
  if (sum > 1.0) return 0.0;
  const double xk = x.back();
  // sum can round a hair past 1 - sum right on the simplex face
  const double arg = std::max(0.0, (1.0 - sum) / xk);
  double gv;
  try {
    gv = g_table.value_or_tail_zero(arg);
  } catch (const std::range_error&) {
    throw std::range_error("density_f_theta_k: g table range insufficient for argument");
  }
  double lead = std::exp(kEulerGamma * p.theta) * gamma_fn(p.theta) *
                std::pow(xk, p.theta - 1.0);
  for (double xi : x) lead *= p.theta / xi;
  return lead * gv;
}

/// Reference PD(theta) distribution: a rho table (always) plus a g_theta
/// table when theta != 1.  Largest-part CDF: rho(1/t) at theta = 1, else
/// 1 - int_t^1 f_{theta,1} by adaptive quadrature.
class PdReference {
 public:
  static PdReference make(const PDParams& p, double t_max = 32.0, double step = 1e-3) {
    validate(p);
    PdReference r;
    r.params_ = p;
    r.rho_ = solve_dickman(t_max, step);
    if (p.theta != 1.0) r.g_ = solve_gtheta(p.theta, t_max, step);
    return r;
  }

  const PDParams& params() const { return params_; }
  const FunctionTable& rho() const { return *rho_; }
  const FunctionTable& g() const {
    if (!g_) throw std::logic_error("PdReference: no g table at theta = 1");
    return *g_;
  }

  double density1(double x) const {
    if (!(x > 0.0) || x > 1.0) return 0.0;
    const double arg = std::max(0.0, (1.0 - x) / x);
    if (params_.theta == 1.0) return rho_->value_or_tail_zero(arg) / x;
    return density_f_theta_k(params_, std::span<const double>(&x, 1), *g_);
  }

  double largest_part_cdf(double t) const {
    if (!(t > 0.0)) throw std::domain_error("largest_part_cdf: t must be positive");
    if (t >= 1.0) return 1.0;
    if (params_.theta == 1.0) return rho_->value_or_tail_zero(1.0 / t);
    const double theta = params_.theta;
    double tail = 0.0;
    if (theta > 1.0) {
      // integrand -> 0 at x = 1
      tail = integrate([this](double x) { return density1(x); }, t, 1.0, 1e-9);
    } else {
      // f ~ theta (1-x)^{theta-1} near 1; substitute y = (1-x)^theta there
      const double c = t < 0.75 ? 0.75 : 0.5 * (t + 1.0);
      if (c > t) tail += integrate([this](double x) { return density1(x); }, t, c, 1e-9);
      const double ymax = std::pow(1.0 - c, theta);
      tail += integrate(
          [this, theta](double y) {
            const double x = 1.0 - std::pow(y, 1.0 / theta);
            if (!(x > 0.0) || y <= 0.0) return 1.0;  // limit value at y -> 0
            return density1(x) * std::pow(y, (1.0 - theta) / theta) / theta;
          },
          0.0, ymax, 1e-9);
    }
    const double c = 1.0 - tail;
    return c < 0.0 ? 0.0 : (c > 1.0 ? 1.0 : c);
  }

 private:
  PDParams params_;
  std::optional<FunctionTable> rho_;
  std::optional<FunctionTable> g_;
};

}  // namespace pdl
