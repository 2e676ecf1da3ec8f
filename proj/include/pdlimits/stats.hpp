#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "pdlimits/multiprec.hpp"
#include "pdlimits/pd_density.hpp"
#include "pdlimits/quadrature.hpp"
#include "pdlimits/sampler.hpp"

namespace pdl {

struct KSResult {
  double statistic = 0.0;
  std::size_t sample_size = 0;
  std::string reference;
};

/// Kolmogorov-Smirnov distance between the empirical law of the sampled
/// largest parts and the PD(theta) largest-part CDF.
inline KSResult ks_largest_part(std::span<const double> largest_parts, const PdReference& ref,
                                std::size_t min_samples = 1000) {
  if (largest_parts.size() < min_samples)
    throw std::invalid_argument("ks_largest_part: insufficient samples");
  std::vector<double> xs(largest_parts.begin(), largest_parts.end());
  std::sort(xs.begin(), xs.end());
  const double inv_n = 1.0 / static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = xs[i] > 0.0 ? ref.largest_part_cdf(std::min(xs[i], 1.0)) : 0.0;
    d = std::max(d, std::fabs(static_cast<double>(i + 1) * inv_n - F));
    d = std::max(d, std::fabs(F - static_cast<double>(i) * inv_n));
  }
  KSResult r;
  r.statistic = d;
  r.sample_size = xs.size();
  r.reference = "PD(" + std::to_string(ref.params().theta) + ") largest-part CDF";
  return r;
}

struct JointCdfReport {
  double max_deviation = 0.0;
  std::vector<double> worst_box;  // grid corner attaining the max
};

namespace detail {

/// Pr(X_1 <= t1, X_2 <= t2) for PD(theta) by 2-D adaptive quadrature of
/// f_{theta,2} over the sorted-support box.  The x2 -> 0 end is cut where
/// the g tail certifies the lost mass is below tolerance.
inline double joint_cdf2(const PdReference& ref, double t1, double t2, double tol) {
  const double theta = ref.params().theta;
  const double tmax = ref.params().theta == 1.0 ? ref.rho().t_max() : ref.g().t_max();
  const auto f2 = [&](double x1, double x2) {
    if (x2 > x1 || x1 + x2 > 1.0 || x2 <= 0.0) return 0.0;
    // the subtraction can round to -1e-17 right on the simplex face
    const double arg = std::max(0.0, (1.0 - x1 - x2) / x2);
    double gv;
    if (theta == 1.0) {
      gv = ref.rho().value_or_tail_zero(arg);
      return gv / (x1 * x2);
    }
    gv = ref.g().value_or_tail_zero(arg);
    return std::exp(kEulerGamma * theta) * theta * theta * gamma_fn(theta) *
           std::pow(x2, theta - 1.0) / (x1 * x2) * gv;
  };
  const double hi2 = std::min(t2, 0.5);
  // below x2_cut every admissible x1 pushes the argument past the table
  const double x2_cut = 1e-12 + (1.0 - std::min(t1 + hi2, 1.0)) / (tmax + 1.0);
  if (hi2 <= x2_cut) return 0.0;
  return integrate(
      [&](double x2) {
        const double lo1 = x2, hi1 = std::min(t1, 1.0 - x2);
        if (hi1 <= lo1) return 0.0;
        return integrate([&](double x1) { return f2(x1, x2); }, lo1, hi1, tol * 0.05);
      },
      x2_cut, hi2, tol);
}

inline double joint_cdf3(const PdReference& ref, double t1, double t2, double t3, double tol) {
  const double theta = ref.params().theta;
  const double tmax = ref.params().theta == 1.0 ? ref.rho().t_max() : ref.g().t_max();
  const auto f3 = [&](double x1, double x2, double x3) {
    if (x3 <= 0.0 || x2 < x3 || x1 < x2 || x1 + x2 + x3 > 1.0) return 0.0;
    const double arg = std::max(0.0, (1.0 - x1 - x2 - x3) / x3);
    double gv;
    if (theta == 1.0) {
      gv = ref.rho().value_or_tail_zero(arg);
      return gv / (x1 * x2 * x3);
    }
    gv = ref.g().value_or_tail_zero(arg);
    return std::exp(kEulerGamma * theta) * theta * theta * theta * gamma_fn(theta) *
           std::pow(x3, theta - 1.0) / (x1 * x2 * x3) * gv;
  };
  const double hi3 = std::min(t3, 1.0 / 3.0);
  const double x3_cut = 1e-10 + (1.0 - std::min(t1 + t2 + hi3, 1.0)) / (tmax + 1.0);
  if (hi3 <= x3_cut) return 0.0;
  return integrate(
      [&](double x3) {
        return integrate(
            [&](double x2) {
              const double lo1 = x2, hi1 = std::min(t1, 1.0 - x2 - x3);
              if (hi1 <= lo1) return 0.0;
              return integrate([&](double x1) { return f3(x1, x2, x3); }, lo1, hi1, tol * 0.02);
            },
            x3, std::min(t2, 0.5), tol * 0.1);
      },
      x3_cut, hi3, tol);
}

}  // namespace detail

/// Max over grid boxes of |empirical joint CDF of (L_1..L_k) - theoretical|.
/// k = 1 delegates to the largest-part CDF so it agrees with
/// ks_largest_part to the last bit on shared grid points; k in {2,3} uses
/// tensor adaptive quadrature of f_{theta,k} (tolerance 1e-5).
inline JointCdfReport joint_cdf_check(std::span<const ScaledSizeSeq> samples,
                                      const PdReference& ref, int k,
                                      std::span<const double> grid) {
  if (k < 1 || k > 3) throw std::invalid_argument("joint_cdf_check: k must be 1, 2, or 3");
  if (samples.empty()) throw std::invalid_argument("joint_cdf_check: no samples");
  for (const auto& s : samples)
    if (s.values.size() < static_cast<std::size_t>(k))
      throw std::invalid_argument("joint_cdf_check: sample shorter than k");
  const double quad_tol = 1e-5;
  JointCdfReport rep;
  std::vector<double> ts(grid.begin(), grid.end());
  const double inv = 1.0 / static_cast<double>(samples.size());
  const auto empirical = [&](std::span<const double> box) {
    std::size_t c = 0;
    for (const auto& s : samples) {
      bool in = true;
      for (int j = 0; j < k; ++j)
        if (s.values[j] > box[j]) {
          in = false;
          break;
        }
      c += in;
    }
    return static_cast<double>(c) * inv;
  };
  if (k == 1) {
    for (double t : ts) {
      const double box[1] = {t};
      const double dev = std::fabs(empirical(box) - ref.largest_part_cdf(t));
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.worst_box = {t};
      }
    }
    return rep;
  }
  if (k == 2) {
    for (double t1 : ts)
      for (double t2 : ts) {
        if (t2 > t1) continue;  // L_2 <= L_1: such boxes repeat (t1, t1)
        const double box[2] = {t1, t2};
        const double theo = detail::joint_cdf2(ref, t1, t2, quad_tol);
        const double dev = std::fabs(empirical(box) - theo);
        if (dev > rep.max_deviation) {
          rep.max_deviation = dev;
          rep.worst_box = {t1, t2};
        }
      }
    return rep;
  }
  for (double t1 : ts)
    for (double t2 : ts)
      for (double t3 : ts) {
        if (t2 > t1 || t3 > t2) continue;
        const double box[3] = {t1, t2, t3};
        const double theo = detail::joint_cdf3(ref, t1, t2, t3, quad_tol);
        const double dev = std::fabs(empirical(box) - theo);
        if (dev > rep.max_deviation) {
          rep.max_deviation = dev;
          rep.worst_box = {t1, t2, t3};
        }
      }
  return rep;
}

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double critical = 0.0;  // quantile at 1 - significance
  bool pass = false;
  int merged_bins = 0;
};

/// Pearson chi-square goodness of fit of observed counts against exact
/// probabilities; bins with expected count below min_expected merge into a
/// common tail bin.
inline ChiSquareResult chi_square_gof(std::span<const long long> observed,
                                      std::span<const double> probs, double significance,
                                      double min_expected = 5.0) {
  if (observed.size() != probs.size() || observed.empty())
    throw std::invalid_argument("chi_square_gof: size mismatch");
  long long total = 0;
  for (long long o : observed) total += o;
  double tail_exp = 0.0;
  long long tail_obs = 0;
  double stat = 0.0;
  int bins = 0, merged = 0;
  double big_exp = -1.0;
  long long big_obs = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double e = probs[i] * static_cast<double>(total);
    if (e < min_expected) {
      tail_exp += e;
      tail_obs += observed[i];
      ++merged;
      continue;
    }
    if (e > big_exp) {
      big_exp = e;
      big_obs = observed[i];
    }
    const double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
    ++bins;
  }
  if (tail_exp > 0.0) {
    if (tail_exp >= min_expected) {
      const double d = static_cast<double>(tail_obs) - tail_exp;
      stat += d * d / tail_exp;
      ++bins;
    } else if (big_exp > 0.0) {
      // fold an undersized tail into the largest bin instead of dropping it
      double d = static_cast<double>(big_obs) - big_exp;
      stat -= d * d / big_exp;
      d = static_cast<double>(big_obs + tail_obs) - (big_exp + tail_exp);
      stat += d * d / (big_exp + tail_exp);
    }
  }
  if (bins < 2) throw std::invalid_argument("chi_square_gof: fewer than 2 usable bins");
  ChiSquareResult r;
  r.statistic = stat;
  r.dof = bins - 1;
  r.merged_bins = merged;
  boost::math::chi_squared_distribution<double> dist(static_cast<double>(r.dof));
  r.critical = boost::math::quantile(dist, 1.0 - significance);
  r.pass = stat <= r.critical;
  return r;
}

}  // namespace pdl
