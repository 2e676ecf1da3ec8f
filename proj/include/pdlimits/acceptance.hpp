#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pdlimits/dickman.hpp"
#include "pdlimits/enumerate.hpp"
#include "pdlimits/intensity.hpp"
#include "pdlimits/moments.hpp"
#include "pdlimits/pd_density.hpp"
#include "pdlimits/primes.hpp"
#include "pdlimits/sampler.hpp"
#include "pdlimits/stats.hpp"

namespace pdl::acceptance {

struct CriterionResult {
  int id = 0;
  std::string label;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

namespace detail {

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }
  bool pass() const { return pass_; }
  std::string detail() const {
    if (pass_) return notes_;
    return failures_ + (notes_.empty() ? "" : " | " + notes_);
  }

 private:
  bool pass_ = true;
  std::string failures_;
  std::string notes_;
};

template <class Body>
CriterionResult timed(int id, const std::string& label, double runtime_limit, Body&& body) {
  CriterionResult r;
  r.id = id;
  r.label = label;
  Check ck;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(ck);
  } catch (const std::exception& e) {
    ck.require(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (runtime_limit > 0)
    ck.require(r.seconds < runtime_limit,
               "runtime " + std::to_string(r.seconds) + "s exceeds " +
                   std::to_string(runtime_limit) + "s");
  r.pass = ck.pass();
  r.detail = ck.detail();
  return r;
}

inline std::string g3(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

/// brute-force moment from an already-enumerated profile distribution
inline Rational moment_from_profiles(const ProfileDistribution& dist,
                                     std::span<const int> idx) {
  Rational acc = 0;
  for (const auto& [profile, weight] : dist.profiles) {
    Rational term = weight;
    for (int i : idx) term *= profile[i - 1];
    acc += term;
  }
  return acc / dist.total_weight;
}

}  // namespace detail

/// 1. Dickman solver: rho(2), rho == 1 on [0,1], g_1 == e^-gamma rho on [0,5].
inline CriterionResult criterion1() {
  return detail::timed(1, "Dickman solver accuracy", 5.0, [](detail::Check& ck) {
    const FunctionTable rho = solve_dickman(5.0, 1e-3);
    const FunctionTable g1 = solve_gtheta(1.0, 5.0, 1e-3);
    const double e2 = std::fabs(rho.value_at(2.0) - (1.0 - std::log(2.0)));
    ck.require(e2 <= 1e-8, "|rho(2) - (1-log 2)| = " + detail::g3(e2));
    bool ones = true;
    for (int i = 0; i <= rho.per_unit(); ++i) ones = ones && rho.values()[i] == 1.0;
    ck.require(ones, "rho not exactly 1 on the [0,1] grid");
    double worst = 0.0;
    const double scale = std::exp(-kEulerGamma);
    for (std::size_t i = 0; i < g1.values().size(); ++i)
      worst = std::max(worst, std::fabs(g1.values()[i] - scale * rho.values()[i]));
    // off-grid points exercise the interpolants as well
    for (double t = 0.0503; t < 5.0; t += 0.0977)
      worst = std::max(worst, std::fabs(g1.value_at(t) - scale * rho.value_at(t)));
    ck.require(worst <= 1e-8, "max |g_1 - e^-gamma rho| = " + detail::g3(worst));
    ck.note("rho(2) err " + detail::g3(e2) + ", g1 err " + detail::g3(worst));
  });
}

/// 2. Permutation identity E{prod C_i} * prod i = 1, exactly.
inline CriterionResult criterion2() {
  return detail::timed(2, "permutation exact moment identity", 30.0, [](detail::Check& ck) {
    long long checked = 0;
    for (const int n : {10, 100}) {
      const FamilySpec fam = FamilySpec::permutation(1);
      const CoeffSeries egf = object_series(fam, n);
      const auto verify = [&](std::span<const int> idx) {
        Rational v = assembly_moment(fam, egf, n, idx);
        for (int i : idx) v *= i;
        ck.require(v == 1, "identity failed at n=" + std::to_string(n));
        ++checked;
      };
      for (int i = 1; i <= n; ++i) {
        const int one[1] = {i};
        verify(one);
      }
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; i + j <= n; ++j) {
          const int two[2] = {i, j};
          verify(two);
        }
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; i + j < n; ++j)
          for (int k = j + 1; i + j + k <= n; ++k) {
            const int three[3] = {i, j, k};
            verify(three);
          }
    }
    // n = 2000: the tuple value factors as A(m) * prod(phi m_i / (i-1)!)
    // with m = sum of indices.  Checking A(m) = 1 for every m and
    // m_i = (i-1)! for every i covers every tuple; a random sample then
    // exercises the assembled path end to end.
    {
      const int n = 2000;
      const FamilySpec fam = FamilySpec::permutation(1);
      const CoeffSeries egf = object_series(fam, n);
      for (int m = 0; m <= n; ++m)
        ck.require(egf.coeffs[n - m] == egf.coeffs[n], "EGF ratio != 1 at m=" + std::to_string(m));
      Integer fact = 1;
      for (int i = 1; i <= n; ++i) {
        ck.require(fam.m(i) == fact, "m_i != (i-1)! at i=" + std::to_string(i));
        fact *= i;
      }
      Rng rng(20250809);
      for (int rep = 0; rep < 20000; ++rep) {
        const int k = 1 + static_cast<int>(rng.below(3));
        std::vector<int> idx;
        int sum = 0;
        while (static_cast<int>(idx.size()) < k) {
          const int i = 1 + static_cast<int>(rng.below(n));
          bool dup = false;
          for (int e : idx) dup = dup || e == i;
          if (dup || sum + i > n) continue;
          idx.push_back(i);
          sum += i;
        }
        Rational v = assembly_moment(fam, egf, n, idx);
        for (int i : idx) v *= i;
        ck.require(v == 1, "identity failed in the n=2000 sample");
        ++checked;
      }
      checked += n + 1;
    }
    ck.note(std::to_string(checked) + " tuples verified exactly");
  });
}

/// 3. Formula vs exhaustive enumeration across families, n, indices, phi.
inline CriterionResult criterion3() {
  return detail::timed(3, "moment formulas vs enumeration", 300.0, [](detail::Check& ck) {
    const std::vector<Rational> phis = {Rational(1, 2), 1, 2, 3};
    long long cases = 0;
    const auto sweep = [&](const FamilySpec& fam, int n,
                           const std::vector<std::vector<int>>& index_sets) {
      const ProfileDistribution dist = enumerate_profiles(fam, n);
      const CoeffSeries q = object_series(fam, n);
      for (const auto& idx : index_sets) {
        bool valid = true;
        for (int i : idx) valid = valid && i >= 1 && i <= n;
        if (!valid) continue;
        const Rational formula = mixed_moment(fam, q, n, idx);
        const Rational oracle = detail::moment_from_profiles(dist, idx);
        ck.require(formula == oracle,
                   "mismatch: " + fam.name() + " n=" + std::to_string(n));
        ++cases;
      }
    };
    const std::vector<std::vector<int>> assembly_idx = {{1}, {2}, {3}, {1, 2}, {2, 3},
                                                        {1, 2, 3}, {1, 2, 4}, {6}};
    const std::vector<std::vector<int>> ms_idx = {{1}, {2}, {5}, {1, 2}, {2, 3},
                                                  {1, 2, 3}, {3, 4}, {8}};
    const auto neck2 = necklace_counts(2, 12);
    std::vector<Integer> factorials(8);
    for (int i = 1; i <= 8; ++i) factorials[i - 1] = factorial(i - 1);
    for (const Rational& phi : phis) {
      for (int n : {6, 7, 8})
        sweep(FamilySpec::custom(ConstructionKind::assembly, factorials, phi), n, assembly_idx);
      for (int n : {6, 7})
        sweep(FamilySpec::uniform(ConstructionKind::assembly, 1, phi), n, assembly_idx);
      for (int n : {8, 10, 12})
        sweep(FamilySpec::custom(ConstructionKind::multiset, neck2, phi), n, ms_idx);
      for (int n : {8, 10, 12})
        sweep(FamilySpec::custom(ConstructionKind::selection, neck2, phi), n, ms_idx);
      sweep(FamilySpec::custom(ConstructionKind::multiset, {2, 1}, phi), 4, {{1}, {2}, {1, 2}});
      sweep(FamilySpec::custom(ConstructionKind::multiset, {2, 1}, phi), 6, {{1}, {2}, {1, 2}});
      sweep(FamilySpec::custom(ConstructionKind::selection, {2, 1, 1}, phi), 3,
            {{1}, {2}, {1, 2}});
      sweep(FamilySpec::custom(ConstructionKind::selection, {2, 1, 1}, phi), 4,
            {{1}, {3}, {1, 3}});
    }
    ck.require(cases >= 200, "only " + std::to_string(cases) + " cases ran");
    ck.note(std::to_string(cases) + " formula-vs-oracle cases, all exactly equal");
  });
}

/// 4. Generating-function identities against classical counts.
inline CriterionResult criterion4() {
  return detail::timed(4, "series identities", 10.0, [](detail::Check& ck) {
    for (const int q : {2, 3}) {
      const auto m = necklace_counts(q, 60);
      const CoeffSeries mul = multiset_series(m, 1, 60);
      const CoeffSeries sel = selection_series(m, 1, 60);
      Integer qn = 1;
      for (int n = 1; n <= 60; ++n) {
        qn *= q;
        ck.require(mul.coeffs[n] == qn, "multiset != q^n at q=" + std::to_string(q) +
                                            ", n=" + std::to_string(n));
        if (n >= 2)
          ck.require(sel.coeffs[n] == qn - qn / q,
                     "selection != q^n - q^{n-1} at n=" + std::to_string(n));
      }
    }
    std::vector<Integer> mperm(60);
    for (int i = 1; i <= 60; ++i) mperm[i - 1] = factorial(i - 1);
    const CoeffSeries asm_series = assembly_series(mperm, 1, 60);
    for (int n = 0; n <= 60; ++n)
      ck.require(asm_series.coeffs[n] == 1, "assembly EGF coefficient != 1 (q != n!)");
    ck.note("q^n, q^n - q^{n-1}, and n! identities exact to n = 60");
  });
}

/// 5. Flajolet-Soria predictions vs exact coefficients.
inline CriterionResult criterion5() {
  return detail::timed(5, "asymptotic prediction convergence", 60.0, [](detail::Check& ck) {
    const std::vector<int> ns = {50, 100, 200, 400};
    const auto run = [&](const FamilySpec& fam, const char* tag) {
      const auto m = fam.m_values(400);
      std::vector<double> devs;
      for (int n : ns) {
        const auto pr = predict_coeff_F(*fam.singular(), fam.kind(), n, m);
        devs.push_back(std::fabs(pr.ratio - 1.0));
      }
      ck.require(devs[0] <= 0.25, std::string(tag) + ": |ratio-1| at n=50 is " +
                                      detail::g3(devs[0]));
      ck.require(devs[3] <= devs[0] + 1e-9,
                 std::string(tag) + ": ratio not closer to 1 at n=400 (" +
                     detail::g3(devs[3]) + " vs " + detail::g3(devs[0]) + ")");
      ck.note(std::string(tag) + " dev@50 " + detail::g3(devs[0]) + ", dev@400 " +
              detail::g3(devs[3]));
    };
    run(FamilySpec::polynomial(ConstructionKind::multiset, 2, 1), "F2 multiset");
    run(FamilySpec::polynomial(ConstructionKind::selection, 2, 1), "F2 selection");
    run(FamilySpec::permutation(1), "permutation");
    // component-level prediction against the necklace counts themselves
    {
      const auto m = necklace_counts(2, 400);
      const SingularData sd{Rational(1, 2), 1.0, 0.0, 1};
      double d50 = 0, d400 = 0;
      for (int n : {50, 400}) {
        const double pred = predict_coeff_G(sd, n);
        const double ratio = std::exp(log_double(m[n - 1]) - std::log(pred));
        (n == 50 ? d50 : d400) = std::fabs(ratio - 1.0);
      }
      ck.require(d50 <= 0.25, "necklace G-level deviation at n=50: " + detail::g3(d50));
      ck.require(d400 <= d50 + 1e-9, "necklace G-level ratio did not improve");
      ck.note("necklace dev@50 " + detail::g3(d50) + ", dev@400 " + detail::g3(d400));
    }
  });
}

/// 6. Sampler vs exact profile law (chi-square) and exact moments (4 sigma).
inline CriterionResult criterion6(unsigned threads = 0) {
  return detail::timed(6, "sampler goodness of fit", 300.0, [threads](detail::Check& ck) {
    const long long reps = 100'000;
    const auto chi = [&](const FamilySpec& fam, int n, std::uint64_t seed, const char* tag) {
      const ProfileDistribution dist = enumerate_profiles(fam, n);
      std::vector<double> probs;
      const double total = to_double(dist.total_weight);
      std::map<std::vector<int>, std::size_t> bin_of;
      for (std::size_t b = 0; b < dist.profiles.size(); ++b) {
        probs.push_back(to_double(dist.profiles[b].second) / total);
        bin_of[dist.profiles[b].first] = b;
      }
      const StructureSampler sampler(fam, n);
      std::vector<long long> observed(probs.size(), 0);
      constexpr long long kChunk = 4096;
      const std::size_t chunks = static_cast<std::size_t>((reps + kChunk - 1) / kChunk);
      std::vector<std::vector<long long>> partial(chunks);
      parallel_for(
          chunks,
          [&](std::size_t b, std::size_t e) {
            for (std::size_t c = b; c < e; ++c) {
              partial[c].assign(probs.size(), 0);
              Rng rng = Rng::stream(seed, c);
              const long long lo = static_cast<long long>(c) * kChunk;
              const long long hi = std::min(reps, lo + kChunk);
              for (long long r = lo; r < hi; ++r) {
                const CountVector cv = sampler.sample(rng);
                ++partial[c][bin_of.at(cv.counts)];
              }
            }
          },
          threads);
      for (const auto& p : partial)
        for (std::size_t b = 0; b < observed.size(); ++b) observed[b] += p[b];
      const ChiSquareResult res = chi_square_gof(observed, probs, 1e-3);
      ck.require(res.pass, std::string(tag) + ": chi2 " + detail::g3(res.statistic) +
                               " > critical " + detail::g3(res.critical));
      ck.note(std::string(tag) + " chi2 " + detail::g3(res.statistic) + " (crit " +
              detail::g3(res.critical) + ", dof " + std::to_string(res.dof) + ")");
    };
    chi(FamilySpec::permutation(1), 8, 101, "permutation n=8");
    chi(FamilySpec::polynomial(ConstructionKind::multiset, 2, 1), 8, 102, "F2 multiset n=8");
    chi(FamilySpec::polynomial(ConstructionKind::selection, 2, 1), 8, 103, "F2 selection n=8");

    // sampled mixed moments vs the exact formulas, within 4 MC sigma
    const auto mom = [&](const FamilySpec& fam, int n, std::vector<int> idx, long long R,
                         std::uint64_t seed, const char* tag) {
      const CoeffSeries q = object_series(fam, n);
      const double exact = to_double(mixed_moment(fam, q, n, idx));
      const StructureSampler sampler(fam, n);
      double s = 0, s2 = 0;
      Rng rng(seed);
      for (long long r = 0; r < R; ++r) {
        const CountVector cv = sampler.sample(rng);
        double v = 1.0;
        for (int i : idx) v *= cv.counts[i - 1];
        s += v;
        s2 += v * v;
      }
      const double mean = s / R;
      const double sig = std::sqrt(std::max(0.0, (s2 - s * s / R) / (R - 1.0)) / R);
      const double dev = std::fabs(mean - exact);
      ck.require(dev <= 4.0 * sig + 1e-12, std::string(tag) + ": |emp-exact| " +
                                               detail::g3(dev) + " > 4 sigma " +
                                               detail::g3(4 * sig));
      ck.note(std::string(tag) + " dev " + detail::g3(dev) + " (4sig " + detail::g3(4 * sig) +
              ")");
    };
    mom(FamilySpec::permutation(1), 50, {2}, 20'000, 202, "perm E C_2");
    mom(FamilySpec::polynomial(ConstructionKind::multiset, 2, 1), 30, {3}, 20'000, 203,
        "F2 mul E C_3");
    mom(FamilySpec::permutation(2), 40, {1, 2}, 20'000, 204, "Ewens2 E C_1 C_2");
  });
}

/// 7. Intensity criterion: exact sums, MC agreement, PD(2) bracketing.
inline CriterionResult criterion7(unsigned threads = 0) {
  return detail::timed(7, "multi-intensity checks", 300.0, [threads](detail::Check& ck) {
    IntervalFamily iv;
    iv.intervals = {{Rational(1, 10), Rational(2, 10)}, {Rational(3, 10), Rational(4, 10)}};
    const int n = 2000;
    const FamilySpec perm = FamilySpec::permutation(1);
    const CoeffSeries egf = object_series(perm, n);
    const Rational exact = exact_intensity(perm, egf, n, iv);
    const double target = std::log(2.0) * std::log(4.0 / 3.0);
    const double dev = std::fabs(to_double(exact) - target);
    ck.require(dev <= 2e-3, "exact intensity off log2*log(4/3) by " + detail::g3(dev));

    const StructureSampler sampler(perm, n);
    IntensityReport mc = mc_intensity(sampler, iv, 100'000, 707, 1.0, threads);
    const double mdev = std::fabs(mc.empirical - to_double(exact));
    ck.require(mdev <= 4.0 * mc.std_error,
               "MC off exact by " + detail::g3(mdev) + " > 4 sigma " +
                   detail::g3(4 * mc.std_error));
    ck.note("exact dev " + detail::g3(dev) + ", MC dev " + detail::g3(mdev) + " (4sig " +
            detail::g3(4 * mc.std_error) + ")");

    IntervalFamily single;
    single.intervals = {{Rational(2, 10), Rational(5, 10)}};
    IntensityReport pd2 = mc_intensity_sticks(PDParams{2.0}, single, 100'000, 708, threads);
    const double lo = pd2.rhs_theta.lo(), hi = pd2.rhs_theta.hi();
    ck.require(pd2.empirical >= lo - 4.0 * pd2.std_error &&
                   pd2.empirical <= hi + 4.0 * pd2.std_error,
               "PD(2) empirical " + detail::g3(pd2.empirical) + " outside [" + detail::g3(lo) +
                   ", " + detail::g3(hi) + "] by more than 4 sigma");
    ck.note("PD(2) intensity " + detail::g3(pd2.empirical) + " in [" + detail::g3(lo) + ", " +
            detail::g3(hi) + "]");
  });
}

/// 8. KS distance of sampled largest parts against PD references.
inline CriterionResult criterion8(unsigned threads = 0) {
  return detail::timed(8, "distributional convergence (KS)", 600.0, [threads](detail::Check& ck) {
    const int n = 2000;
    const long long reps = 10'000;
    const PdReference pd1 = PdReference::make(PDParams{1.0});
    const PdReference pd2 = PdReference::make(PDParams{2.0});
    const auto ks_of = [&](const FamilySpec& fam, const PdReference& ref, std::uint64_t seed,
                           double band, const char* tag) {
      const StructureSampler sampler(fam, n);
      std::vector<double> l1(reps);
      constexpr long long kChunk = 2048;
      const std::size_t chunks = static_cast<std::size_t>((reps + kChunk - 1) / kChunk);
      parallel_for(
          chunks,
          [&](std::size_t b, std::size_t e) {
            for (std::size_t c = b; c < e; ++c) {
              Rng rng = Rng::stream(seed, c);
              const long long lo = static_cast<long long>(c) * kChunk;
              const long long hi = std::min(reps, lo + kChunk);
              for (long long r = lo; r < hi; ++r) {
                const CountVector cv = sampler.sample(rng);
                int big = 0;
                for (int i = n; i >= 1; --i)
                  if (cv.counts[i - 1] > 0) {
                    big = i;
                    break;
                  }
                l1[r] = static_cast<double>(big) / n;
              }
            }
          },
          threads);
      const KSResult res = ks_largest_part(l1, ref);
      ck.require(res.statistic < band, std::string(tag) + ": KS " + detail::g3(res.statistic) +
                                           " >= " + detail::g3(band));
      ck.note(std::string(tag) + " KS " + detail::g3(res.statistic));
    };
    ks_of(FamilySpec::permutation(1), pd1, 801, 0.05, "permutation vs PD(1)");
    ks_of(FamilySpec::polynomial(ConstructionKind::multiset, 2, 1), pd1, 802, 0.05,
          "F2 multiset vs PD(1)");
    ks_of(FamilySpec::permutation(2), pd2, 803, 0.07, "Ewens(2) vs PD(2)");
  });
}

/// 9. Billingsley proxy: Mertens window sum and smooth-number probability.
inline CriterionResult criterion9(unsigned threads = 0) {
  return detail::timed(9, "Billingsley proxy", 600.0, [threads](detail::Check& ck) {
    const auto sieve = primes_up_to(1024);
    const double mert = mertens_window_sum(1e6, 0.2, 0.5, sieve);
    const double target = std::log(2.5);
    const double rel = std::fabs(mert - target) / target;
    ck.require(rel <= 0.05, "Mertens window sum " + detail::g3(mert) + " differs from log 2.5 (" +
                                detail::g3(target) + ") by " + detail::g3(100 * rel) + "%");
    ck.note("Mertens sum " + detail::g3(mert) + " vs log 2.5 " + detail::g3(target) + " (" +
            detail::g3(100 * rel) + "% off)");

    const std::uint64_t n = 1'000'000;
    const long long reps = 100'000;
    const FunctionTable rho = solve_dickman(3.0, 1e-3);
    constexpr long long kChunk = 8192;
    const std::size_t chunks = static_cast<std::size_t>((reps + kChunk - 1) / kChunk);
    std::vector<long long> hits(chunks, 0);
    parallel_for(
        chunks,
        [&](std::size_t b, std::size_t e) {
          for (std::size_t c = b; c < e; ++c) {
            Rng rng = Rng::stream(909, c);
            const long long lo = static_cast<long long>(c) * kChunk;
            const long long hi = std::min(reps, lo + kChunk);
            long long h = 0;
            for (long long r = lo; r < hi; ++r) {
              const ScaledSizeSeq seq = sample_prime_factors(n, rng, sieve, 1);
              h += seq.values[0] <= 0.5 ? 1 : 0;
            }
            hits[c] = h;
          }
        },
        threads);
    long long total = 0;
    for (long long h : hits) total += h;
    const double emp = static_cast<double>(total) / reps;
    const double dev = std::fabs(emp - rho.value_at(2.0));
    ck.require(dev <= 0.05, "Pr(L1<=0.5) " + detail::g3(emp) + " off rho(2) by " +
                                detail::g3(dev));
    ck.note("Pr(L1<=0.5) " + detail::g3(emp) + " vs rho(2) " + detail::g3(rho.value_at(2.0)) +
            " (dev " + detail::g3(dev) + ")");
  });
}

/// 10. Determinism: stochastic CLI pipelines rerun with the same seed must
/// produce byte-identical reports.
inline CriterionResult criterion10(
    const std::function<int(const std::vector<std::string>&)>& run_cli,
    const std::string& tmpdir) {
  return detail::timed(10, "seeded reruns byte-identical", 300.0, [&](detail::Check& ck) {
    const auto slurp = [](const std::string& path) {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream os;
      os << in.rdbuf();
      return os.str();
    };
    const auto rerun = [&](std::vector<std::string> args, const std::string& name) {
      const std::string a = tmpdir + "/" + name + ".a", b = tmpdir + "/" + name + ".b";
      std::vector<std::string> run1 = args, run2 = args;
      run1.push_back("--out");
      run1.push_back(a);
      run2.push_back("--out");
      run2.push_back(b);
      ck.require(run_cli(run1) == 0, name + ": first run failed");
      ck.require(run_cli(run2) == 0, name + ": second run failed");
      const std::string ca = slurp(a), cb = slurp(b);
      ck.require(!ca.empty() && ca == cb, name + ": reports differ between reruns");
    };
    rerun({"dickman", "--tmax", "3", "--step", "1e-3"}, "dickman");
    rerun({"sample", "--family", "permutation", "--phi", "1", "--n", "40", "--replicates",
           "2000", "--seed", "7", "--format", "csv", "--mode", "scaled", "--k", "5"},
          "sample");
    rerun({"intensity", "--family", "permutation", "--phi", "1", "--n", "300", "--intervals",
           "0.1:0.2,0.3:0.4", "--replicates", "5000", "--seed", "11", "--exact"},
          "intensity");
    rerun({"ks", "--family", "polynomial-multiset-Fq", "--q", "2", "--phi", "1", "--n", "200",
           "--replicates", "2000", "--seed", "3"},
          "ks");
    rerun({"billingsley", "--n", "100000", "--replicates", "20000", "--seed", "5"},
          "billingsley");
    ck.note("5 pipelines byte-identical across reruns");
  });
}

inline std::vector<CriterionResult> run_all(
    const std::function<int(const std::vector<std::string>&)>& run_cli,
    const std::string& tmpdir, unsigned threads = 0) {
  std::vector<CriterionResult> out;
  out.push_back(criterion1());
  out.push_back(criterion2());
  out.push_back(criterion3());
  out.push_back(criterion4());
  out.push_back(criterion5());
  out.push_back(criterion6(threads));
  out.push_back(criterion7(threads));
  out.push_back(criterion8(threads));
  out.push_back(criterion9(threads));
  out.push_back(criterion10(run_cli, tmpdir));
  return out;
}

}  // namespace pdl::acceptance
