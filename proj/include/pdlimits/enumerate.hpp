#pragma once

#include <cstdlib>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdlimits/families.hpp"
#include "pdlimits/multiprec.hpp"
#include "pdlimits/types.hpp"

namespace pdl {

/// Exact tilted weight of every component-count profile of size n,
/// obtained by exhaustive enumeration of the structures themselves (set
/// partitions for assemblies, per-kind multiplicity vectors for multisets
/// and selections).  This is the test oracle the moment formulas and the
/// sampler are judged against, so it deliberately shares no formulas with
/// them.
struct ProfileDistribution {
  int n = 0;
  std::vector<std::pair<std::vector<int>, Rational>> profiles;  // (c_1..c_n, weight)
  Rational total_weight = 0;
};

namespace detail {

inline int enumeration_guard(int default_cap) {
  if (const char* env = std::getenv("PD_LIMITS_GUARD_OVERRIDE")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return default_cap;
}

inline void enumerate_set_partitions(int n, std::vector<int>& block_sizes,
                                     int next,  // next element to place
                                     std::map<std::vector<int>, Integer>& counts) {
  if (next == n) {
    std::vector<int> profile(n, 0);
    for (int s : block_sizes) ++profile[s - 1];
    ++counts[profile];
    return;
  }
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    ++block_sizes[b];
    enumerate_set_partitions(n, block_sizes, next + 1, counts);
    --block_sizes[b];
  }
  block_sizes.push_back(1);
  enumerate_set_partitions(n, block_sizes, next + 1, counts);
  block_sizes.pop_back();
}

struct KindList {
  std::vector<int> sizes;       // one entry per irreducible kind, descending
  std::vector<int> suffix_min;  // smallest kind size at or after position
};

inline KindList universe_kinds(const FamilySpec& fam, int n) {
  KindList kl;
  for (int i = n; i >= 1; --i) {
    const Integer mi = fam.m(i);
    if (mi < 0) throw std::domain_error("enumerate: negative m_i");
    if (mi > 1'000'000) throw guard_error("enumerate: universe too large (m_i huge)");
    for (long long c = 0; c < mi.convert_to<long long>(); ++c) kl.sizes.push_back(i);
  }
  kl.suffix_min.assign(kl.sizes.size() + 1, n + 1);
  for (int p = static_cast<int>(kl.sizes.size()) - 1; p >= 0; --p)
    kl.suffix_min[p] = std::min(kl.suffix_min[p + 1], kl.sizes[p]);
  return kl;
}

inline void enumerate_multi_index(const KindList& kl, bool with_repetition, int pos,
                                  int remaining, std::vector<int>& profile,
                                  std::map<std::vector<int>, Integer>& counts) {
  if (remaining == 0) {
    ++counts[profile];
    return;
  }
  if (pos >= static_cast<int>(kl.sizes.size())) return;
  if (kl.suffix_min[pos] > remaining) return;  // nothing small enough remains
  const int w = kl.sizes[pos];
  const int cmax = with_repetition ? remaining / w : (w <= remaining ? 1 : 0);
  for (int c = cmax; c >= 0; --c) {
    profile[w - 1] += c;
    enumerate_multi_index(kl, with_repetition, pos + 1, remaining - c * w, profile, counts);
    profile[w - 1] -= c;
  }
}

}  // namespace detail

/// Exhaustive profile weights.  Guards: assemblies n <= 10 (Bell numbers),
/// multisets/selections n <= 14 with a bounded universe.  The
/// PD_LIMITS_GUARD_OVERRIDE environment variable raises the n caps
/// (expert-only; cost grows combinatorially).
inline ProfileDistribution enumerate_profiles(const FamilySpec& fam, int n) {
  if (n < 1) throw std::domain_error("enumerate_profiles: n must be >= 1");
  ProfileDistribution out;
  out.n = n;
  std::map<std::vector<int>, Integer> counts;
  if (fam.kind() == ConstructionKind::assembly) {
    const int cap = detail::enumeration_guard(10);
    if (n > cap)
      throw guard_error("enumerate_profiles: assembly n > " + std::to_string(cap) +
                        " (Bell(n) partitions; override via PD_LIMITS_GUARD_OVERRIDE)");
    std::vector<int> block_sizes;
    detail::enumerate_set_partitions(n, block_sizes, 0, counts);
  } else {
    const int cap = detail::enumeration_guard(14);
    if (n > cap)
      throw guard_error("enumerate_profiles: n > " + std::to_string(cap) +
                        " (override via PD_LIMITS_GUARD_OVERRIDE)");
    const auto kl = detail::universe_kinds(fam, n);
    if (kl.sizes.size() > 20'000)
      throw guard_error("enumerate_profiles: universe has " +
                        std::to_string(kl.sizes.size()) + " kinds; too many");
    std::vector<int> profile(n, 0);
    detail::enumerate_multi_index(kl, fam.kind() == ConstructionKind::multiset, 0, n, profile,
                                  counts);
  }
  // structure multiplicity: assemblies get one of m_i structures per block
  // of size i; multisets/selections already enumerated kinds one by one
  const Rational phi = fam.phi();
  for (auto& [profile, structures] : counts) {
    Rational weight = structures;
    int K = 0;
    for (int i = 1; i <= n; ++i) {
      const int c = profile[i - 1];
      if (c == 0) continue;
      K += c;
      if (fam.kind() == ConstructionKind::assembly)
        weight *= rational_pow(Rational(fam.m(i)), c);
    }
    weight *= rational_pow(phi, K);
    if (weight == 0) continue;
    out.profiles.emplace_back(profile, weight);
    out.total_weight += weight;
  }
  if (out.total_weight == 0)
    throw std::domain_error("enumerate_profiles: no structure of this size exists");
  return out;
}

/// Weighted average of prod C_{i_j} over the enumerated structures.
inline Rational brute_force_moment(const FamilySpec& fam, int n, std::span<const int> idx) {
  for (int i : idx)
    if (i < 1 || i > n) throw std::domain_error("brute_force_moment: index outside [1, n]");
  const ProfileDistribution dist = enumerate_profiles(fam, n);
  Rational acc = 0;
  for (const auto& [profile, weight] : dist.profiles) {
    Rational term = weight;
    for (int i : idx) term *= profile[i - 1];
    acc += term;
  }
  return acc / dist.total_weight;
}

}  // namespace pdl
