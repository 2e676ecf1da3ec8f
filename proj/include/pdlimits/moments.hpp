#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "pdlimits/families.hpp"
#include "pdlimits/multiprec.hpp"
#include "pdlimits/series.hpp"
#include "pdlimits/types.hpp"

namespace pdl {

struct MomentQuery {
  int n = 0;
  std::vector<int> indices;  // distinct sizes i_1..i_k in [1, n]
};

struct MomentResult {
  Rational exact;
  double master_rhs = 0.0;
  double ratio = 0.0;  // to_double(exact) / master_rhs
};

namespace detail {

inline void check_indices(int n, std::span<const int> idx) {
  if (n < 1) throw std::domain_error("moment: n must be >= 1");
  if (idx.empty()) throw std::domain_error("moment: need at least one index");
  std::set<int> seen;
  for (int i : idx) {
    if (i < 1 || i > n) throw std::domain_error("moment: index outside [1, n]");
    if (!seen.insert(i).second)
      throw std::domain_error("moment: duplicate index (formula requires distinct sizes)");
  }
}

inline Rational q_or_zero(const CoeffSeries& q, int n) { return n < 0 ? Rational(0) : q.ordinary(n); }

/// Recursive h-sum of the multiset/selection moment formulas.  q_phi of a
/// negative argument is 0, which is what terminates every branch.
inline Rational h_sum(const CoeffSeries& q, const Rational& phi, std::span<const int> idx,
                      std::size_t pos, int remaining, int h_parity, bool alternating) {
  if (pos == idx.size()) {
    Rational v = q_or_zero(q, remaining);
    if (alternating && h_parity % 2 != 0) v = -v;
    return v;
  }
  Rational acc = 0;
  const int step = idx[pos];
  Rational phi_pow = phi;
  for (int used = step, h = 1; used <= remaining; used += step, ++h) {
    acc += phi_pow * h_sum(q, phi, idx, pos + 1, remaining - used, h_parity + h, alternating);
    phi_pow *= phi;
  }
  return acc;
}

}  // namespace detail

/// Assemblies: E{C_{i_1}...C_{i_k}} =
///   (n!/q_phi(n)) (q_phi(n-m)/(n-m)!) prod phi m_{i_j} / i_j!
/// The rho^{-m} prefactor of the raw formula cancels exactly against the
/// product's rho^{i_j} factors, so no singular data enters.  With the EGF
/// coefficients e(r) = q_phi(r)/r! this is e(n-m)/e(n) * prod(...).
inline Rational assembly_moment(const FamilySpec& fam, const CoeffSeries& egf, int n,
                                std::span<const int> idx) {
  if (fam.kind() != ConstructionKind::assembly)
    throw std::domain_error("assembly_moment: family is not an assembly");
  if (egf.norm != Normalization::exponential)
    throw std::domain_error("assembly_moment: series must be exponential-normalized");
  detail::check_indices(n, idx);
  if (n > egf.degree()) throw std::out_of_range("assembly_moment: series degree too small");
  long long m = 0;
  for (int i : idx) m += i;
  if (m > n) return 0;  // some count must vanish
  Rational prod = 1;
  for (int i : idx) prod *= fam.phi() * Rational(fam.m(i), factorial_cached(i));
  return egf.coeffs[static_cast<int>(n - m)] / egf.coeffs[n] * prod;
}

/// Multisets: E = (prod m_{i_j} / q_phi(n)) *
///   sum_{h_1..h_k >= 1} phi^{sum h} q_phi(n - sum h_j i_j).
inline Rational multiset_moment(const FamilySpec& fam, const CoeffSeries& q, int n,
                                std::span<const int> idx) {
  if (fam.kind() != ConstructionKind::multiset)
    throw std::domain_error("multiset_moment: family is not a multiset");
  if (q.norm != Normalization::ordinary)
    throw std::domain_error("multiset_moment: series must be ordinary-normalized");
  detail::check_indices(n, idx);
  if (n > q.degree()) throw std::out_of_range("multiset_moment: series degree too small");
  double tuples = 1.0;
  for (int i : idx) tuples *= static_cast<double>(n) / i;
  if (tuples > 2e7)
    throw guard_error("multiset_moment: h-sum too large; raise indices or lower k");
  Rational pref = 1;
  for (int i : idx) pref *= fam.m(i);
  if (pref == 0) return 0;
  const Rational sum = detail::h_sum(q, fam.phi(), idx, 0, n, 0, /*alternating=*/false);
  return pref / q.coeffs[n] * sum;
}

/// Selections: as multisets with sign (-1)^{h_1+...+h_k+k}.
inline Rational selection_moment(const FamilySpec& fam, const CoeffSeries& q, int n,
                                 std::span<const int> idx) {
  if (fam.kind() != ConstructionKind::selection)
    throw std::domain_error("selection_moment: family is not a selection");
  if (q.norm != Normalization::ordinary)
    throw std::domain_error("selection_moment: series must be ordinary-normalized");
  detail::check_indices(n, idx);
  if (n > q.degree()) throw std::out_of_range("selection_moment: series degree too small");
  double tuples = 1.0;
  for (int i : idx) tuples *= static_cast<double>(n) / i;
  if (tuples > 2e7)
    throw guard_error("selection_moment: h-sum too large; raise indices or lower k");
  Rational pref = 1;
  for (int i : idx) pref *= fam.m(i);
  if (pref == 0) return 0;
  // (-1)^{sum h + k}: fold the +k into the parity baseline
  const Rational sum = detail::h_sum(q, fam.phi(), idx, 0, n, static_cast<int>(idx.size()),
                                     /*alternating=*/true);
  return pref / q.coeffs[n] * sum;
}

/// Dispatch on the family's construction.
inline Rational mixed_moment(const FamilySpec& fam, const CoeffSeries& q, int n,
                             std::span<const int> idx) {
  switch (fam.kind()) {
    case ConstructionKind::assembly: return assembly_moment(fam, q, n, idx);
    case ConstructionKind::multiset: return multiset_moment(fam, q, n, idx);
    case ConstructionKind::selection: return selection_moment(fam, q, n, idx);
  }
  throw std::logic_error("unreachable");
}

/// Builds the object series a family needs for moment queries up to n.
inline CoeffSeries object_series(const FamilySpec& fam, int N) {
  const auto m = fam.m_values(N < 1 ? 1 : N);
  switch (fam.kind()) {
    case ConstructionKind::assembly: return assembly_series(m, fam.phi(), N);
    case ConstructionKind::multiset: return multiset_series(m, fam.phi(), N);
    case ConstructionKind::selection: return selection_series(m, fam.phi(), N);
  }
  throw std::logic_error("unreachable");
}

/// theta^k / (1 - m/n)^{1-theta} / (i_1...i_k): the master-condition RHS
/// used for ratio reporting.  Undefined at sum(indices) >= n.
inline double master_rhs(double theta, int n, std::span<const int> idx) {
  if (!(theta > 0)) throw std::domain_error("master_rhs: theta must be positive");
  detail::check_indices(n, idx);
  long long m = 0;
  double denom = 1.0;
  for (int i : idx) {
    m += i;
    denom *= i;
  }
  if (m >= n) throw std::domain_error("master_rhs: requires sum(indices) < n");
  const double frac = 1.0 - static_cast<double>(m) / n;
  return std::pow(theta, static_cast<double>(idx.size())) /
         std::pow(frac, 1.0 - theta) / denom;
}

}  // namespace pdl
