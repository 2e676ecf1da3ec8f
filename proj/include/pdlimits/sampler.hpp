#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pdlimits/families.hpp"
#include "pdlimits/rng.hpp"
#include "pdlimits/special.hpp"
#include "pdlimits/types.hpp"

namespace pdl {

/// Component-count profile of one structure: counts[i-1] = C_i,
/// sum i*C_i = n exactly.
struct CountVector {
  int n = 0;
  std::vector<int> counts;

  void check() const {
    long long s = 0;
    for (int i = 1; i <= n; ++i) s += static_cast<long long>(i) * counts[i - 1];
    if (s != n) throw std::logic_error("CountVector: sum i*C_i != n");
  }
};

/// Non-increasing scaled sizes L_1 >= L_2 >= ... padded with zeros.
struct ScaledSizeSeq {
  std::vector<double> values;
};

/// counts -> sorted sizes / n, zero-padded to pad entries (longer if the
/// structure has more components).
inline ScaledSizeSeq scaled_sizes(const CountVector& cv, std::size_t pad) {
  ScaledSizeSeq out;
  for (int i = cv.n; i >= 1; --i)
    for (int c = 0; c < cv.counts[i - 1]; ++c)
      out.values.push_back(static_cast<double>(i) / cv.n);
  if (out.values.size() < pad) out.values.resize(pad, 0.0);
  return out;
}

/// Exact sequential-conditioning sampler for the tilted measure on size-n
/// structures.  Builds one table of partial-universe weights
///   W[i][w] = total weight of structures of size w using components of
///             size <= i,
/// in log space, then draws C_n, C_{n-1}, ..., C_1 from their exact
/// conditionals.  Per-count weights:
///   assemblies:  (phi m_i / i!)^c / c!          (EGF normalization)
///   multisets:   C(m_i + c - 1, c) phi^c
///   selections:  C(m_i, c) phi^c
/// The table is immutable after construction; sampling only reads it, so
/// replicates can run in parallel with per-stream RNGs.
class StructureSampler {
 public:
  StructureSampler(const FamilySpec& fam, int n, int guard = 10'000)
      : fam_(fam), n_(n) {
    if (n < 1) throw std::domain_error("StructureSampler: n must be >= 1");
    if (n > guard)
      throw guard_error("StructureSampler: n exceeds feasibility guard " +
                        std::to_string(guard));
    build();
  }

  const FamilySpec& family() const { return fam_; }
  int n() const { return n_; }

  /// log W[i][w]; exposed for cross-checks against the series module.
  double log_partial_weight(int i, int w) const { return logW_[idx(i, w)]; }

  CountVector sample(Rng& rng) const {
    CountVector cv;
    cv.n = n_;
    cv.counts.assign(n_, 0);
    int w = n_;
    for (int i = n_; i >= 1 && w > 0; --i) {
      const int cmax = std::min(w / i, cap_[i]);
      if (cmax == 0) continue;
      const double norm = logW_[idx(i, w)];
      const double u = rng.uniform01();
      double cum = 0.0;
      int chosen = cmax;  // rounding fallback: last feasible count
      for (int c = 0; c <= cmax; ++c) {
        const double lw = count_weight_log(i, c) + logW_[idx(i - 1, w - c * i)];
        if (lw == -std::numeric_limits<double>::infinity()) continue;
        cum += std::exp(lw - norm);
        if (u < cum) {
          chosen = c;
          break;
        }
      }
      if (chosen > 0) {
        cv.counts[i - 1] = chosen;
        w -= chosen * i;
      }
    }
    if (w != 0) throw std::logic_error("StructureSampler: leftover weight after draw");
    cv.check();
    return cv;
  }

 private:
  std::size_t idx(int i, int w) const {
    return static_cast<std::size_t>(i) * (n_ + 1) + w;
  }

  /// log of the per-count weight w_i(c); c = 0 gives 0.
  double count_weight_log(int i, int c) const { return wtab_[i][c]; }

  /// Weight tables are built incrementally in c, which keeps binomials of
  /// astronomically large m_i exact to double precision (a difference of
  /// lgamma values at ~1e60 would lose every digit).
  void build_weight_table(int i) {
    const double lm = logm_[i];
    auto& row = wtab_[i];
    row.assign(cap_[i] + 1, -std::numeric_limits<double>::infinity());
    row[0] = 0.0;
    if (lm == -std::numeric_limits<double>::infinity()) return;
    const bool huge = lm >= 500.0;
    const double m = huge ? 0.0 : std::exp(lm);
    for (int c = 1; c <= cap_[i]; ++c) {
      double log_num;  // log of the c-th numerator factor
      switch (fam_.kind()) {
        case ConstructionKind::assembly:
          log_num = lphi_ + lm - lfact_[i];
          break;
        case ConstructionKind::multiset:
          log_num = lphi_ + (huge ? lm : std::log(m + c - 1));
          break;
        case ConstructionKind::selection:
          log_num = lphi_ + (huge ? lm : std::log(m - c + 1));
          break;
        default:
          log_num = -std::numeric_limits<double>::infinity();
      }
      row[c] = row[c - 1] + log_num - std::log(static_cast<double>(c));
    }
  }

  void build() {
    const std::size_t side = static_cast<std::size_t>(n_) + 1;
    if (side * side * sizeof(double) > 3e9)
      throw guard_error("StructureSampler: DP table would exceed memory guard");
    lphi_ = std::log(to_double(fam_.phi()));
    lfact_.resize(side);
    lfact_[0] = 0.0;
    for (std::size_t k = 1; k < side; ++k)
      lfact_[k] = lfact_[k - 1] + std::log(static_cast<double>(k));
    logm_.assign(side, 0.0);
    cap_.assign(side, 0);
    wtab_.assign(side, {});
    for (int i = 1; i <= n_; ++i) {
      logm_[i] = fam_.log_m(i);
      cap_[i] = n_ / i;
      if (fam_.kind() == ConstructionKind::selection) {
        const Integer mi = fam_.m(i);
        if (mi < cap_[i]) cap_[i] = mi.convert_to<int>();
      }
      build_weight_table(i);
    }
    logW_.assign(side * side, -std::numeric_limits<double>::infinity());
    logW_[idx(0, 0)] = 0.0;
    std::vector<double> terms;
    for (int i = 1; i <= n_; ++i) {
      for (int w = 0; w <= n_; ++w) {
        const int cmax = std::min(w / i, cap_[i]);
        terms.clear();
        for (int c = 0; c <= cmax; ++c) {
          const double lw = count_weight_log(i, c) + logW_[idx(i - 1, w - c * i)];
          if (lw != -std::numeric_limits<double>::infinity()) terms.push_back(lw);
        }
        logW_[idx(i, w)] = log_sum(terms);
      }
    }
    if (logW_[idx(n_, n_)] == -std::numeric_limits<double>::infinity())
      throw std::domain_error("StructureSampler: no structure of this size exists");
  }

  FamilySpec fam_;
  int n_;
  double lphi_ = 0.0;
  std::vector<double> lfact_;
  std::vector<double> logm_;
  std::vector<int> cap_;
  std::vector<std::vector<double>> wtab_;  // wtab_[i][c] = log w_i(c)
  std::vector<double> logW_;
};

}  // namespace pdl
