#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "pdlimits/multiprec.hpp"
#include "pdlimits/series.hpp"
#include "pdlimits/special.hpp"
#include "pdlimits/types.hpp"

namespace pdl {

/// [z^n]G(z) ~ theta rho^{-n} / n for the component series.
inline double predict_coeff_G(const SingularData& sd, long long n) {
  if (n < 1) throw std::domain_error("predict_coeff_G: n must be >= 1");
  const double log_rho = std::log(to_double(sd.rho));
  return sd.theta * std::exp(-static_cast<double>(n) * log_rho) / static_cast<double>(n);
}

struct AsymptoticPrediction {
  long long n = 0;
  double predicted = 0.0;   // may overflow double for very large n; logs below stay valid
  double exact = 0.0;
  double ratio = 0.0;       // exact / predicted, computed in log space
  double log_predicted = 0.0;
  double log_exact = 0.0;
  double float_path_relerr = 0.0;  // 0 on the exact-arithmetic path
};

struct LambdaEstimate {
  double lambda = 0.0;
  /// |difference| between the two Richardson-extrapolated estimates used
  /// for cross-checking; callers should insist on < 1e-6.
  double pair_disagreement = 0.0;
};

/// FS3 constant lambda = lim_{z->rho} [G(z) - theta log 1/(1 - z/rho)].
/// Evaluated as lambda(delta) = G(rho(1-delta)) - theta log(1/delta) whose
/// error is O(delta) for series with an isolated log singularity, then
/// Richardson-extrapolated in delta.  log_coeff(i) is the log of the i-th
/// power-series coefficient of G: log(m_i) for the ordinary generating
/// functions of multisets/selections, log(m_i/i!) for assembly EGFs; it
/// must return -inf for vanishing coefficients and stay cheap for i up to
/// a few hundred thousand.
inline LambdaEstimate estimate_lambda(const std::function<double(long long)>& log_coeff,
                                      double rho, double theta) {
  if (!(rho > 0.0) || rho > 1.0) throw std::domain_error("estimate_lambda: rho in (0,1]");
  const auto G_at = [&](double delta) {
    const double logz = std::log(rho) + std::log1p(-delta);
    double acc = 0.0;
    for (long long i = 1;; ++i) {
      const double lm = log_coeff(i);
      if (lm != -std::numeric_limits<double>::infinity()) {
        const double term = std::exp(lm + static_cast<double>(i) * logz);
        acc += term;
        if (i > 64 && term < 1e-17 * (std::fabs(acc) + 1.0)) break;
      }
      if (i > 80'000'000) throw guard_error("estimate_lambda: series not converging");
    }
    return acc;
  };
  const auto lam_at = [&](double delta) { return G_at(delta) + theta * std::log(delta); };
  const auto extrapolated = [&](double delta) {
    return 2.0 * lam_at(delta) - lam_at(2.0 * delta);
  };
  LambdaEstimate est;
  const double a = extrapolated(1e-4);
  const double b = extrapolated(2e-4);
  est.lambda = a;
  est.pair_disagreement = std::fabs(a - b);
  return est;
}

namespace detail {

/// G(z) = sum m_i z^i from exact coefficients, in double, with a geometric
/// tail certificate.  Throws if the supplied terms cannot certify 1e-13.
inline double eval_G_exact(std::span<const Integer> m, double z) {
  if (!(z > 0.0) || z >= 1.0) throw std::domain_error("eval_G_exact: need 0 < z < 1");
  const double logz = std::log(z);
  double acc = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= m.size(); ++i) {
    if (m[i - 1] == 0) continue;
    const double term = std::exp(log_double(m[i - 1]) + static_cast<double>(i) * logz);
    acc += term;
    if (term < 1e-16 * (acc + 1.0) && term <= prev) return acc;
    prev = term;
  }
  throw std::invalid_argument("eval_G_exact: not enough m terms to certify the tail");
}

}  // namespace detail

/// log C for multisets: R(rho) = sum_{j>=2} phi^j G(rho^j) / j, truncated
/// when a geometric tail bound certifies total error < 1e-12.
inline double multiset_log_C(std::span<const Integer> m, double rho, double phi) {
  if (!(phi > 0.0) || !(phi * rho < 1.0))
    throw std::domain_error("multiset_log_C: requires phi * rho < 1");
  double acc = 0.0;
  double prev_term = std::numeric_limits<double>::infinity();
  for (int j = 2;; ++j) {
    const double term = std::pow(phi, j) * detail::eval_G_exact(m, std::pow(rho, j)) / j;
    if (term > prev_term)
      throw std::domain_error("multiset_log_C: series terms not decreasing");
    acc += term;
    // remaining terms shrink at least geometrically with ratio ~ phi*rho
    const double q = phi * rho;
    if (term * q / (1.0 - q) < 1e-13) break;
    prev_term = term;
    if (j > 10'000) throw guard_error("multiset_log_C: no convergence");
  }
  return acc;
}

/// log C for selections: log S(rho) = sum_i m_i (log(1 + phi rho^i) - phi rho^i).
/// Terms are O(m_i phi^2 rho^{2i}), summable for every phi > 0.
inline double selection_log_C(std::span<const Integer> m, double rho, double phi) {
  if (!(phi > 0.0)) throw std::domain_error("selection_log_C: phi must be positive");
  if (!(rho > 0.0) || rho >= 1.0) throw std::domain_error("selection_log_C: rho in (0,1)");
  double acc = 0.0;
  const double log_rho = std::log(rho);
  bool certified = false;
  for (std::size_t i = 1; i <= m.size(); ++i) {
    if (m[i - 1] == 0) continue;
    const double u = phi * std::exp(static_cast<double>(i) * log_rho);
    double val;  // log(1+u) - u, series form when cancellation would bite
    if (u < 1e-4) {
      val = -u * u / 2.0 + u * u * u / 3.0 - u * u * u * u / 4.0;
    } else {
      val = std::log1p(u) - u;
    }
    const double lm = log_double(m[i - 1]);
    const double term = (val < 0 ? -1.0 : 1.0) * std::exp(lm + std::log(std::fabs(val)));
    acc += term;
    if (std::fabs(term) < 1e-16 * (std::fabs(acc) + 1.0) && i > 8) {
      certified = true;
      break;
    }
  }
  if (!certified)
    throw std::invalid_argument("selection_log_C: not enough m terms to certify the tail");
  return acc;
}

namespace detail {

/// Float fast path for large n: the log-derivative recurrence on the scaled
/// coefficients q(n) rho^n, with a running relative-error bound.
struct ScaledCoeff {
  double log_value = 0.0;
  double relerr = 0.0;
};

inline ScaledCoeff float_coeff(ConstructionKind kind, std::span<const Integer> m,
                               const Rational& phi, double rho, int n) {
  const double phi_d = to_double(phi);
  const double log_rho = std::log(rho);
  std::vector<double> b(n + 1, 0.0);  // b_j rho^j
  for (int d = 1; d <= n && d <= static_cast<int>(m.size()); ++d) {
    if (m[d - 1] == 0) continue;
    const double lg_dm = std::log(static_cast<double>(d)) + log_double(m[d - 1]);
    for (int j = d, e = 1; j <= n; j += d, ++e) {
      double v = std::exp(lg_dm + e * std::log(phi_d) + j * log_rho);
      if (kind == ConstructionKind::selection && e % 2 == 0) v = -v;
      b[j] += v;
    }
  }
  std::vector<double> q(n + 1, 0.0), err(n + 1, 0.0);
  q[0] = 1.0;
  for (int w = 1; w <= n; ++w) {
    double acc = 0.0, mag = 0.0, e = 0.0;
    for (int j = 1; j <= w; ++j) {
      const double t = b[j] * q[w - j];
      acc += t;
      mag += std::fabs(t);
      e += std::fabs(t) * (err[w - j] + 4e-16);
    }
    q[w] = acc / w;
    err[w] = q[w] != 0.0 ? (e + mag * 2e-16) / std::fabs(acc) : 0.0;
  }
  if (!(q[n] > 0.0)) throw std::runtime_error("float_coeff: lost positivity");
  return {std::log(q[n]) - n * log_rho, err[n]};
}

}  // namespace detail

/// Predicted vs exact object coefficients.  Assemblies predict the EGF
/// coefficient q_phi(n)/n! with C = 1; multisets use C = exp(R(rho));
/// selections use C = S(rho).  sd.lambda must already be resolved.
/// Exact arithmetic up to n = 2000, scaled float64 recurrence beyond.
inline AsymptoticPrediction predict_coeff_F(const SingularData& sd, ConstructionKind kind,
                                            int n, std::span<const Integer> m) {
  if (n < 1) throw std::domain_error("predict_coeff_F: n must be >= 1");
  sd.validate(kind);
  const double rho = to_double(sd.rho);
  const double phi = to_double(sd.phi);
  double log_C = 0.0;
  if (kind == ConstructionKind::multiset) log_C = multiset_log_C(m, rho, phi);
  if (kind == ConstructionKind::selection) log_C = selection_log_C(m, rho, phi);

  AsymptoticPrediction out;
  out.n = n;
  const double pt = phi * sd.theta;
  out.log_predicted = log_C + phi * sd.lambda - log_gamma(pt) +
                      (pt - 1.0) * std::log(static_cast<double>(n)) -
                      static_cast<double>(n) * std::log(rho);
  if (n <= 2000) {
    Rational exact;
    switch (kind) {
      case ConstructionKind::assembly:
        exact = assembly_series(m, sd.phi, n).coeffs[n];
        break;
      case ConstructionKind::multiset:
        exact = multiset_series(m, sd.phi, n).coeffs[n];
        break;
      case ConstructionKind::selection:
        exact = selection_series(m, sd.phi, n).coeffs[n];
        break;
    }
    if (exact <= 0) throw std::runtime_error("predict_coeff_F: nonpositive exact coefficient");
    out.log_exact = log_double(numerator(exact)) - log_double(denominator(exact));
    out.float_path_relerr = 0.0;
  } else {
    if (kind == ConstructionKind::assembly)
      throw guard_error("predict_coeff_F: assembly float path not supported beyond n = 2000");
    const auto sc = detail::float_coeff(kind, m, sd.phi, rho, n);
    out.log_exact = sc.log_value;
    out.float_path_relerr = sc.relerr;
  }
  out.predicted = std::exp(out.log_predicted);
  out.exact = std::exp(out.log_exact);
  out.ratio = std::exp(out.log_exact - out.log_predicted);
  return out;
}

}  // namespace pdl
