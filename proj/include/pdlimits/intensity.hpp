#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pdlimits/moments.hpp"
#include "pdlimits/multiprec.hpp"
#include "pdlimits/parallel.hpp"
#include "pdlimits/primes.hpp"
#include "pdlimits/sampler.hpp"
#include "pdlimits/stick_breaking.hpp"

namespace pdl {

/// Disjoint closed test intervals [a_i, b_i] in (0,1] with sum b_i < 1.
/// Endpoints are exact rationals so index-window membership never depends
/// on float rounding.
struct IntervalFamily {
  std::vector<std::pair<Rational, Rational>> intervals;

  void validate() const {
    if (intervals.empty()) throw std::domain_error("IntervalFamily: empty");
    Rational bsum = 0;
    for (const auto& [a, b] : intervals) {
      if (!(a > 0) || !(b > a) || b > 1)
        throw std::domain_error("IntervalFamily: need 0 < a < b <= 1");
      bsum += b;
    }
    if (!(bsum < 1)) throw std::domain_error("IntervalFamily: sum of b_i must be < 1");
    for (std::size_t i = 0; i < intervals.size(); ++i)
      for (std::size_t j = i + 1; j < intervals.size(); ++j) {
        const auto& [a1, b1] = intervals[i];
        const auto& [a2, b2] = intervals[j];
        if (!(b1 < a2 || b2 < a1))
          throw std::domain_error("IntervalFamily: intervals must be disjoint");
      }
  }

  std::size_t k() const { return intervals.size(); }

  double sum_a() const {
    Rational s = 0;
    for (const auto& [a, b] : intervals) s += a;
    return to_double(s);
  }
  double sum_b() const {
    Rational s = 0;
    for (const auto& [a, b] : intervals) s += b;
    return to_double(s);
  }
  double log_product() const {
    double p = 1.0;
    for (const auto& [a, b] : intervals) p *= std::log(to_double(b) / to_double(a));
    return p;
  }

  /// Component sizes counted by interval i at total size n: a*n < j <= b*n,
  /// the index convention of the combinatorial limit arguments, decided
  /// with exact rational comparisons.
  std::vector<int> index_window(std::size_t i, int n) const {
    const auto& [a, b] = intervals[i];
    std::vector<int> out;
    for (int j = 1; j <= n; ++j) {
      const Rational jn(j);
      if (jn > a * n && jn <= b * n) out.push_back(j);
    }
    return out;
  }
};

/// Both Prop-2 right-hand sides
///   theta^k / ((1-sum a)^alpha (1-sum b)^beta) * prod log(b_i/a_i)
/// for the two (alpha, beta) assignments used in the master-theorem proof:
/// (1-theta, 0) and (0, 1-theta).
struct ThetaRhs {
  double alpha_first = 0.0;  // (alpha, beta) = (1-theta, 0)
  double beta_first = 0.0;   // (alpha, beta) = (0, 1-theta)
  double lo() const { return std::min(alpha_first, beta_first); }
  double hi() const { return std::max(alpha_first, beta_first); }
};

inline ThetaRhs theta_rhs(double theta, const IntervalFamily& iv) {
  if (!(theta > 0)) throw std::domain_error("theta_rhs: theta must be positive");
  iv.validate();
  const double base = std::pow(theta, static_cast<double>(iv.k())) * iv.log_product();
  ThetaRhs r;
  r.alpha_first = base / std::pow(1.0 - iv.sum_a(), 1.0 - theta);
  r.beta_first = base / std::pow(1.0 - iv.sum_b(), 1.0 - theta);
  return r;
}

struct IntensityReport {
  double empirical = 0.0;
  double std_error = 0.0;
  long long replicates = 0;
  ThetaRhs rhs_theta;
  double rhs_master = 0.0;
  std::optional<Rational> exact;
};

/// E prod_i |A_n cap I_i| by exact summation of mixed moments over all index
/// tuples in the interval windows.  Disjoint intervals make the tuples
/// automatically distinct.
inline Rational exact_intensity(const FamilySpec& fam, const CoeffSeries& series, int n,
                                const IntervalFamily& iv, double tuple_guard = 4e6) {
  iv.validate();
  std::vector<std::vector<int>> windows;
  double tuples = 1.0;
  for (std::size_t i = 0; i < iv.k(); ++i) {
    windows.push_back(iv.index_window(i, n));
    if (windows.back().empty()) return 0;  // no indices: a count is surely 0
    tuples *= static_cast<double>(windows.back().size());
  }
  if (tuples > tuple_guard)
    throw guard_error("exact_intensity: " + std::to_string(static_cast<long long>(tuples)) +
                      " index tuples exceed the guard; use mc_intensity instead");
  std::vector<int> tuple(iv.k());
  Rational acc = 0;
  const std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == windows.size()) {
      acc += mixed_moment(fam, series, n, tuple);
      return;
    }
    for (int j : windows[pos]) {
      tuple[pos] = j;
      rec(pos + 1);
    }
  };
  rec(0);
  return acc;
}

namespace detail {

/// Deterministic chunked Monte Carlo mean: chunk c uses Rng::stream(seed, c)
/// and partial sums combine in chunk order, so thread count cannot change
/// the result.
template <class PerReplicate>
IntensityReport mc_mean(long long replicates, std::uint64_t seed, unsigned threads,
                        const PerReplicate& value_of) {
  if (replicates < 1000) throw std::domain_error("mc_intensity: need at least 1000 replicates");
  constexpr long long kChunk = 4096;
  const std::size_t chunks = static_cast<std::size_t>((replicates + kChunk - 1) / kChunk);
  std::vector<double> sums(chunks, 0.0), sqs(chunks, 0.0);
  parallel_for(
      chunks,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) {
          Rng rng = Rng::stream(seed, c);
          const long long lo = static_cast<long long>(c) * kChunk;
          const long long hi = std::min(replicates, lo + kChunk);
          double s = 0.0, s2 = 0.0;
          for (long long r = lo; r < hi; ++r) {
            const double v = value_of(rng);
            s += v;
            s2 += v * v;
          }
          sums[c] = s;
          sqs[c] = s2;
        }
      },
      threads);
  double s = 0.0, s2 = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    s += sums[c];
    s2 += sqs[c];
  }
  IntensityReport rep;
  rep.replicates = replicates;
  rep.empirical = s / static_cast<double>(replicates);
  const double var =
      std::max(0.0, (s2 - s * s / static_cast<double>(replicates)) /
                        static_cast<double>(replicates - 1));
  rep.std_error = std::sqrt(var / static_cast<double>(replicates));
  return rep;
}

}  // namespace detail

/// MC intensity for a combinatorial family at size n.  theta_pd is the
/// limit parameter phi * theta_FS; rhs_master is the fixed-n mid-chain
/// bound with harmonic sums in place of the logs.
inline IntensityReport mc_intensity(const StructureSampler& sampler, const IntervalFamily& iv,
                                    long long replicates, std::uint64_t seed, double theta_pd,
                                    unsigned threads = 0) {
  iv.validate();
  const int n = sampler.n();
  std::vector<std::vector<int>> windows;
  for (std::size_t i = 0; i < iv.k(); ++i) windows.push_back(iv.index_window(i, n));
  auto rep = detail::mc_mean(replicates, seed, threads, [&](Rng& rng) {
    const CountVector cv = sampler.sample(rng);
    double prod = 1.0;
    for (const auto& w : windows) {
      long long cnt = 0;
      for (int j : w) cnt += cv.counts[j - 1];
      prod *= static_cast<double>(cnt);
    }
    return prod;
  });
  rep.rhs_theta = theta_rhs(theta_pd, iv);
  double master = std::pow(theta_pd, static_cast<double>(iv.k()));
  master /= theta_pd <= 1.0 ? std::pow(1.0 - iv.sum_a(), 1.0 - theta_pd)
                            : std::pow(1.0 - iv.sum_b(), 1.0 - theta_pd);
  for (const auto& w : windows) {
    double h = 0.0;
    for (int j : w) h += 1.0 / j;
    master *= h;
  }
  rep.rhs_master = master;
  return rep;
}

/// MC intensity with the PD(theta) stick-breaking process itself as the
/// sampler (the n -> infinity reference).
inline IntensityReport mc_intensity_sticks(const PDParams& params, const IntervalFamily& iv,
                                           long long replicates, std::uint64_t seed,
                                           unsigned threads = 0) {
  iv.validate();
  std::vector<std::pair<double, double>> ab;
  double amin = 1.0;
  for (const auto& [a, b] : iv.intervals) {
    ab.emplace_back(to_double(a), to_double(b));
    amin = std::min(amin, to_double(a));
  }
  // all sticks above the leftover remainder are final, so eps far below
  // a_min makes interval counts exact
  const double eps = std::min(1e-9, amin / 64.0);
  auto rep = detail::mc_mean(replicates, seed, threads, [&](Rng& rng) {
    const StickRun run = run_sticks(params, rng, eps);
    double prod = 1.0;
    for (const auto& [a, b] : ab) {
      long long cnt = 0;
      for (double s : run.sticks) cnt += (s >= a && s <= b) ? 1 : 0;
      prod *= static_cast<double>(cnt);
    }
    return prod;
  });
  rep.rhs_theta = theta_rhs(params.theta, iv);
  rep.rhs_master = rep.rhs_theta.alpha_first;  // no finite-n chain here
  return rep;
}

/// MC intensity for scaled log prime factors of uniform integers in [1..n].
/// Interval membership follows the prime-side closed convention
/// n^a <= p <= n^b.
inline IntensityReport mc_intensity_primes(std::uint64_t n, const IntervalFamily& iv,
                                           long long replicates, std::uint64_t seed,
                                           const std::vector<std::uint32_t>& sieve,
                                           unsigned threads = 0) {
  iv.validate();
  std::vector<std::pair<double, double>> ab;
  for (const auto& [a, b] : iv.intervals) ab.emplace_back(to_double(a), to_double(b));
  auto rep = detail::mc_mean(replicates, seed, threads, [&](Rng& rng) {
    const ScaledSizeSeq seq = sample_prime_factors(n, rng, sieve);
    double prod = 1.0;
    for (const auto& [a, b] : ab) {
      long long cnt = 0;
      for (double v : seq.values) cnt += (v >= a && v <= b) ? 1 : 0;
      prod *= static_cast<double>(cnt);
    }
    return prod;
  });
  rep.rhs_theta = theta_rhs(1.0, iv);
  double master = 1.0;
  for (const auto& [a, b] : ab) master *= mertens_window_sum(static_cast<double>(n), a, b, sieve);
  rep.rhs_master = master;
  return rep;
}

}  // namespace pdl
