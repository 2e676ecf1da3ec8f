#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdlimits/special.hpp"

namespace pdl {

enum class TableKind { dickman_rho, g_theta };

/// Dense table of rho(t) or g_theta(t) on a uniform grid t_i = i/per_unit,
/// i = 0..per_unit*units.  Immutable after construction and safe to share
/// across threads.
///
/// Evaluation on (0,1] uses the exact boundary branch (rho = 1,
/// g_theta = e^{-gamma*theta} t^{theta-1} / Gamma(theta)); past 1 it
/// interpolates cubically.  Both functions are smooth on every interval
/// [j, j+1] but only C^{j-1} at the integer joints, so interpolation
/// stencils are clamped to never straddle an integer.
class FunctionTable {
 public:
  FunctionTable(TableKind kind, double theta, int per_unit, std::vector<double> values)
      : kind_(kind), theta_(theta), per_unit_(per_unit), values_(std::move(values)) {
    if (per_unit_ < 2 || values_.size() < static_cast<std::size_t>(per_unit_) + 1)
      throw std::domain_error("FunctionTable: grid too coarse");
  }

  TableKind kind() const { return kind_; }
  double theta() const { return theta_; }
  double step() const { return 1.0 / per_unit_; }
  int per_unit() const { return per_unit_; }
  double t_max() const { return static_cast<double>(values_.size() - 1) / per_unit_; }
  const std::vector<double>& values() const { return values_; }

  double boundary_branch(double t) const {
    if (kind_ == TableKind::dickman_rho) return 1.0;
    return std::exp(-kEulerGamma * theta_) * std::pow(t, theta_ - 1.0) / gamma_fn(theta_);
  }

  double value_at(double t) const {
    if (!(t >= 0)) throw std::domain_error("FunctionTable: negative abscissa");
    if (t <= 1.0) return boundary_branch(t);
    if (t > t_max() + 1e-12) throw std::range_error("FunctionTable: t beyond table range");
    return interpolate(std::min(t, t_max()));
  }

  /// Like value_at, except arguments past the end evaluate to 0 when the
  /// stored tail is certified negligible.  rho and g_theta decay like
  /// t^{-t}, so a table reaching values < tail_tol genuinely carries no
  /// more mass at our tolerances.
  double value_or_tail_zero(double t, double tail_tol = 1e-14) const {
    if (t > t_max() && values_.back() < tail_tol) return 0.0;
    return value_at(t);
  }

  /// Two-column CSV (t,value), 12 significant digits.
  void write_csv(std::ostream& os) const {
    char buf[64];
    os << "t,value\n";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double t = static_cast<double>(i) / per_unit_;
      std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", t, values_[i]);
      os << buf;
    }
  }

 private:
  double interpolate(double t) const {
    const double pos = t * per_unit_;
    long long j = static_cast<long long>(pos);
    const long long last = static_cast<long long>(values_.size()) - 1;
    if (j >= last) j = last - 1;
    // smooth piece [floor(t), floor(t)+1] in grid indices
    long long piece_lo = (j / per_unit_) * per_unit_;
    long long piece_hi = piece_lo + per_unit_;
    if (piece_hi > last) piece_hi = last;
    long long i0 = j - 1;
    if (i0 < piece_lo) i0 = piece_lo;
    if (i0 > piece_hi - 3) i0 = piece_hi - 3;
    // 4-point Lagrange in the scaled variable u = pos - i0
    const double u = pos - static_cast<double>(i0);
    const double c0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
    const double c1 = u * (u - 2) * (u - 3) / 2.0;
    const double c2 = -u * (u - 1) * (u - 3) / 2.0;
    const double c3 = u * (u - 1) * (u - 2) / 6.0;
    const std::size_t b = static_cast<std::size_t>(i0);
    return c0 * values_[b] + c1 * values_[b + 1] + c2 * values_[b + 2] + c3 * values_[b + 3];
  }

  TableKind kind_;
  double theta_;
  int per_unit_;
  std::vector<double> values_;
};

}  // namespace pdl
