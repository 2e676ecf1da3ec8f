#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pdlimits/stats.hpp"
#include "pdlimits/stick_breaking.hpp"

using namespace pdl;

namespace {

std::vector<double> pd_largest_parts(double theta, int count, std::uint64_t seed) {
  std::vector<double> out(count);
  Rng rng(seed);
  for (int r = 0; r < count; ++r) out[r] = sample_pd(PDParams{theta}, 1, rng).parts[0];
  return out;
}

}  // namespace

TEST_CASE("KS self-consistency: PD(1) sticks against the PD(1) reference") {
  const PdReference ref = PdReference::make(PDParams{1.0});
  const auto l1 = pd_largest_parts(1.0, 100000, 2024);
  const KSResult res = ks_largest_part(l1, ref);
  CHECK(res.statistic < 0.01);
  CHECK(res.sample_size == 100000);
}

TEST_CASE("KS discriminates a mismatched reference") {
  const PdReference ref2 = PdReference::make(PDParams{2.0});
  const auto l1 = pd_largest_parts(1.0, 20000, 2025);
  const KSResult res = ks_largest_part(l1, ref2);
  CHECK(res.statistic > 0.1);
}

TEST_CASE("KS requires enough samples") {
  const PdReference ref = PdReference::make(PDParams{1.0});
  const std::vector<double> few(10, 0.5);
  CHECK_THROWS_AS(ks_largest_part(few, ref), std::invalid_argument);
}

TEST_CASE("joint k=1 agrees with the largest-part CDF machinery") {
  const PdReference ref = PdReference::make(PDParams{1.0});
  std::vector<ScaledSizeSeq> samples;
  Rng rng(314);
  for (int r = 0; r < 4000; ++r) {
    const StickSample s = sample_pd(PDParams{1.0}, 1, rng);
    samples.push_back(ScaledSizeSeq{{s.parts[0]}});
  }
  const std::vector<double> grid = {0.3, 0.5, 0.7, 0.9};
  const JointCdfReport rep = joint_cdf_check(samples, ref, 1, grid);
  double manual = 0.0;
  for (double t : grid) {
    std::size_t c = 0;
    for (const auto& s : samples) c += s.values[0] <= t;
    manual = std::max(manual,
                      std::fabs(static_cast<double>(c) / samples.size() -
                                ref.largest_part_cdf(t)));
  }
  CHECK(std::fabs(rep.max_deviation - manual) < 1e-12);
}

TEST_CASE("2-D quadrature of f_{1,2} reproduces single-margin masses") {
  const PdReference ref = PdReference::make(PDParams{1.0});
  // P(L1<=t, L2<=t) = P(L1<=t) because L2 <= L1
  for (double t : {0.4, 0.6}) {
    const double joint = detail::joint_cdf2(ref, t, t, 1e-5);
    CHECK(std::fabs(joint - ref.largest_part_cdf(t)) < 5e-5);
  }
  // full support mass
  const double mass = detail::joint_cdf2(ref, 1.0, 0.5, 1e-5);
  CHECK(std::fabs(mass - 1.0) < 1e-4);
}

TEST_CASE("joint CDF check at k=2 against PD(1) sticks") {
  const PdReference ref = PdReference::make(PDParams{1.0});
  std::vector<ScaledSizeSeq> samples;
  Rng rng(271828);
  for (int r = 0; r < 30000; ++r) {
    const StickSample s = sample_pd(PDParams{1.0}, 2, rng);
    samples.push_back(ScaledSizeSeq{{s.parts[0], s.parts[1]}});
  }
  const std::vector<double> grid = {0.2, 0.35, 0.5, 0.75};
  const JointCdfReport rep = joint_cdf_check(samples, ref, 2, grid);
  CHECK(rep.max_deviation < 0.02);
}

TEST_CASE("theoretical joint CDF is monotone and within [0,1]") {
  const PdReference ref = PdReference::make(PDParams{2.0});
  double prev = 0.0;
  for (double t1 : {0.2, 0.4, 0.6, 0.8}) {
    const double v = detail::joint_cdf2(ref, t1, 0.3, 1e-5);
    CHECK(v >= prev - 1e-6);
    CHECK(v >= -1e-9);
    CHECK(v <= 1.0 + 1e-6);
    prev = v;
  }
}

TEST_CASE("joint CDF check refuses k > 3 and short samples") {
  const PdReference ref = PdReference::make(PDParams{1.0});
  std::vector<ScaledSizeSeq> samples(10, ScaledSizeSeq{{0.5, 0.3}});
  const std::vector<double> grid = {0.5};
  CHECK_THROWS_AS(joint_cdf_check(samples, ref, 4, grid), std::invalid_argument);
  CHECK_THROWS_AS(joint_cdf_check(samples, ref, 3, grid), std::invalid_argument);
}

TEST_CASE("chi-square gof: exact distribution passes, biased fails") {
  // observed drawn from the exact law at a deterministic seed
  const std::vector<double> probs = {0.5, 0.25, 0.125, 0.125};
  Rng rng(5150);
  std::vector<long long> obs(4, 0);
  for (int r = 0; r < 20000; ++r) {
    const double u = rng.uniform01();
    if (u < 0.5) ++obs[0];
    else if (u < 0.75) ++obs[1];
    else if (u < 0.875) ++obs[2];
    else ++obs[3];
  }
  CHECK(chi_square_gof(obs, probs, 1e-3).pass);
  const std::vector<double> wrong = {0.25, 0.5, 0.125, 0.125};
  CHECK_FALSE(chi_square_gof(obs, wrong, 1e-3).pass);
}

TEST_CASE("chi-square merges undersized bins") {
  const std::vector<double> probs = {0.9892, 0.01, 0.0004, 0.0004};
  std::vector<long long> obs = {9890, 102, 5, 3};
  const ChiSquareResult r = chi_square_gof(obs, probs, 1e-3);
  CHECK(r.merged_bins == 2);
  CHECK(r.pass);
}
