#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pdlimits/rng.hpp"

namespace pdl {

struct PDParams {
  double theta = 1.0;
};

inline void validate(const PDParams& p) {
  if (!(p.theta > 0.0)) throw std::domain_error("PDParams: theta must be positive");
}

/// Finite prefix of a sorted stick-breaking realization.  parts holds the
/// k largest values, already final: no stick generated later can exceed
/// them.  residual = 1 - sum(parts), the mass carried by everything else.
struct StickSample {
  std::vector<double> parts;
  double residual = 0.0;
};

/// Raw stick-breaking run: G_1 = 1-V_1, G_2 = V_1(1-V_2), ... with
/// V_i = U_i^{1/theta}.  Runs until the unbroken remainder falls below eps
/// and at least min_final sticks exceed it.  remainder on return is the
/// leftover product, so sum(sticks) + remainder = 1 up to rounding.
struct StickRun {
  std::vector<double> sticks;  // generation order
  double remainder = 1.0;
};

inline StickRun run_sticks(const PDParams& p, Rng& rng, double eps = 1e-9,
                           std::size_t min_final = 1) {
  validate(p);
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("run_sticks: eps in (0,1) required");
  StickRun out;
  double remainder = 1.0;
  const double inv_theta = 1.0 / p.theta;
  std::size_t over = 0;  // sticks currently known to exceed the remainder
  while (true) {
    const double v = std::pow(rng.uniform01(), inv_theta);
    const double stick = remainder * (1.0 - v);
    out.sticks.push_back(stick);
    remainder *= v;
    if (remainder < eps) {
      if (over < min_final) {
        over = 0;
        for (double s : out.sticks)
          if (s > remainder) ++over;
      }
      if (over >= min_final) break;
    }
    if (remainder == 0.0) break;
  }
  out.remainder = remainder;
  return out;
}

/// Top-k sorted parts of one PD(theta) realization.  Deterministic for a
/// fixed rng state; every returned part exceeds the generation remainder,
/// which guarantees the prefix is final.
inline StickSample sample_pd(const PDParams& p, int k, Rng& rng, double eps = 1e-9) {
  if (k < 1) throw std::domain_error("sample_pd: k must be >= 1");
  validate(p);
  StickRun run = run_sticks(p, rng, eps, static_cast<std::size_t>(k));
  if (run.sticks.size() < static_cast<std::size_t>(k))
    run.sticks.resize(static_cast<std::size_t>(k), 0.0);  // u == 0 drawn; measure-zero edge
  std::partial_sort(run.sticks.begin(), run.sticks.begin() + k, run.sticks.end(),
                    std::greater<double>());
  StickSample out;
  out.parts.assign(run.sticks.begin(), run.sticks.begin() + k);
  double sum = 0.0;
  for (double x : out.parts) sum += x;
  out.residual = 1.0 - sum;
  return out;
}

}  // namespace pdl
