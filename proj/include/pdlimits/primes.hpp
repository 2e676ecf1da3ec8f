#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pdlimits/multiprec.hpp"
#include "pdlimits/rng.hpp"
#include "pdlimits/sampler.hpp"

namespace pdl {

inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<bool> comp(limit + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p <= limit; ++p) {
    if (comp[p]) continue;
    out.push_back(p);
    for (std::uint64_t q = static_cast<std::uint64_t>(p) * p; q <= limit; q += p)
      comp[q] = true;
  }
  return out;
}

/// Prime factors of v with multiplicity, ascending, by trial division
/// against a sieve covering sqrt(v).
inline std::vector<std::uint64_t> factorize(std::uint64_t v,
                                            const std::vector<std::uint32_t>& sieve) {
  std::vector<std::uint64_t> out;
  for (std::uint32_t p : sieve) {
    if (static_cast<std::uint64_t>(p) * p > v) break;
    while (v % p == 0) {
      out.push_back(p);
      v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

/// Scaled log prime factors of a uniform N in [1..n]:
/// the multiset { log p / log n } with multiplicity, sorted, padded.
/// Deterministic per rng state; guard keeps trial division feasible.
inline ScaledSizeSeq sample_prime_factors(std::uint64_t n, Rng& rng,
                                          const std::vector<std::uint32_t>& sieve,
                                          std::size_t pad = 0,
                                          std::uint64_t guard = 1'000'000'000ULL) {
  if (n < 2) throw std::domain_error("sample_prime_factors: n must be >= 2");
  if (n > guard)
    throw guard_error("sample_prime_factors: n exceeds factorization guard");
  const std::uint64_t smax = sieve.empty() ? 0 : sieve.back();
  if (smax * smax < n)
    throw std::domain_error("sample_prime_factors: sieve does not cover sqrt(n)");
  const std::uint64_t N = 1 + rng.below(n);
  auto factors = factorize(N, sieve);
  ScaledSizeSeq out;
  const double logn = std::log(static_cast<double>(n));
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    out.values.push_back(std::log(static_cast<double>(*it)) / logn);
  if (out.values.size() < pad) out.values.resize(pad, 0.0);
  return out;
}

/// sum of 1/p over primes with n^a <= p <= n^b (closed window, matching
/// the prime-side convention).
inline double mertens_window_sum(double n, double a, double b,
                                 const std::vector<std::uint32_t>& sieve) {
  if (!(a > 0.0) || !(b > a) || !(b <= 1.0))
    throw std::domain_error("mertens_window_sum: need 0 < a < b <= 1");
  const double lo = std::pow(n, a), hi = std::pow(n, b);
  if (sieve.empty() || sieve.back() < hi - 1.0)
    throw std::domain_error("mertens_window_sum: sieve too small");
  double s = 0.0;
  for (std::uint32_t p : sieve) {
    if (p > hi) break;
    if (p >= lo) s += 1.0 / p;
  }
  return s;
}

}  // namespace pdl
