#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "pdlimits/multiprec.hpp"

namespace pdl {

enum class Normalization { ordinary, exponential };

/// Exact power-series coefficients c_0..c_N of an object series Q(x, phi).
/// exponential normalization stores q_phi(n)/n! (assemblies); ordinary
/// stores q_phi(n) itself (multisets, selections).
struct CoeffSeries {
  Normalization norm = Normalization::ordinary;
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  /// q_phi(n) regardless of stored normalization; 0 past the degree is the
  /// caller's business (see moments), negative n is always 0.
  Rational ordinary(int n) const {
    if (n < 0) return 0;
    if (n > degree()) throw std::out_of_range("CoeffSeries: coefficient beyond degree");
    if (norm == Normalization::ordinary) return coeffs[n];
    return coeffs[n] * factorial(n);
  }
};

namespace detail {

/// m shorter than N is zero-extended: a finite universe simply has no
/// kinds beyond its data.
inline void check_series_args(std::span<const Integer> m, const Rational& phi, int N) {
  if (N < 1) throw std::domain_error("series: N must be >= 1");
  if (!(phi > 0)) throw std::domain_error("series: phi must be positive");
  for (const Integer& v : m)
    if (v < 0) throw std::domain_error("series: negative m_i");
}

}  // namespace detail

/// Assemblies: Q(x,phi) = exp(phi * sum m_i x^i / i!).  Writing
/// c_n = q_phi(n)/n!, differentiating gives
///   c_n = (1/n) * sum_{j=1}^{n} (phi m_j / (j-1)!) c_{n-j}.
/// m is 1-based in spirit: m[j-1] = m_j.
inline CoeffSeries assembly_series(std::span<const Integer> m, const Rational& phi, int N) {
  detail::check_series_args(m, phi, N);
  const int jmax = std::min<int>(N, static_cast<int>(m.size()));
  std::vector<Rational> w(jmax + 1);  // w[j] = phi * m_j / (j-1)!
  Integer fact = 1;
  for (int j = 1; j <= jmax; ++j) {
    if (j > 1) fact *= j - 1;
    w[j] = phi * Rational(m[j - 1], fact);
  }
  CoeffSeries s;
  s.norm = Normalization::exponential;
  s.coeffs.assign(N + 1, Rational(0));
  s.coeffs[0] = 1;
  for (int n = 1; n <= N; ++n) {
    Rational acc = 0;
    for (int j = 1; j <= n && j <= jmax; ++j) {
      if (m[j - 1] == 0) continue;
      acc += w[j] * s.coeffs[n - j];
    }
    s.coeffs[n] = acc / n;
  }
  return s;
}

namespace detail {

/// b_j for the log-derivative recurrence n q(n) = sum b_j q(n-j).
/// multisets:  b_j = sum_{d|j} d m_d phi^{j/d}
/// selections: b_j = sum_{d|j} (-1)^{j/d+1} d m_d phi^{j/d}
inline std::vector<Rational> logderiv_weights(std::span<const Integer> m, const Rational& phi,
                                              int N, bool alternating) {
  std::vector<Rational> phi_pow(N + 1);
  phi_pow[0] = 1;
  for (int e = 1; e <= N; ++e) phi_pow[e] = phi_pow[e - 1] * phi;
  std::vector<Rational> b(N + 1, Rational(0));
  for (int d = 1; d <= N && d <= static_cast<int>(m.size()); ++d) {
    if (m[d - 1] == 0) continue;
    const Rational dm = Rational(m[d - 1]) * d;
    for (int j = d, e = 1; j <= N; j += d, ++e) {
      if (alternating && e % 2 == 0)
        b[j] -= dm * phi_pow[e];
      else
        b[j] += dm * phi_pow[e];
    }
  }
  return b;
}

inline CoeffSeries logderiv_series(std::span<const Integer> m, const Rational& phi, int N,
                                   bool alternating) {
  check_series_args(m, phi, N);
  const std::vector<Rational> b = logderiv_weights(m, phi, N, alternating);
  CoeffSeries s;
  s.norm = Normalization::ordinary;
  s.coeffs.assign(N + 1, Rational(0));
  s.coeffs[0] = 1;
  for (int n = 1; n <= N; ++n) {
    Rational acc = 0;
    for (int j = 1; j <= n; ++j) {
      if (b[j] == 0) continue;
      acc += b[j] * s.coeffs[n - j];
    }
    s.coeffs[n] = acc / n;
  }
  return s;
}

}  // namespace detail

/// Multisets: Q(x,phi) = prod (1 - phi x^i)^{-m_i}.  Exact coefficients
/// exist for every phi > 0; the phi*rho < 1 restriction belongs to the
/// asymptotic predictions, not here.
inline CoeffSeries multiset_series(std::span<const Integer> m, const Rational& phi, int N) {
  return detail::logderiv_series(m, phi, N, /*alternating=*/false);
}

/// Selections: Q(x,phi) = prod (1 + phi x^i)^{m_i}.
inline CoeffSeries selection_series(std::span<const Integer> m, const Rational& phi, int N) {
  return detail::logderiv_series(m, phi, N, /*alternating=*/true);
}

}  // namespace pdl
