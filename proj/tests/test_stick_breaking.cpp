#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracle_helpers.hpp"
#include "pdlimits/dickman.hpp"
#include "pdlimits/stick_breaking.hpp"

using namespace pdl;

TEST_CASE("sticks plus remainder telescope to 1") {
  for (std::uint64_t seed : {1ull, 2ull, 77ull, 123456789ull}) {
    for (double theta : {0.5, 1.0, 2.0}) {
      Rng rng(seed);
      const StickRun run = run_sticks(PDParams{theta}, rng);
      double total = run.remainder;
      for (double s : run.sticks) total += s;
      CHECK(std::fabs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("sample_pd returns a final, sorted prefix") {
  Rng rng(42);
  const StickSample s = sample_pd(PDParams{1.0}, 5, rng);
  REQUIRE(s.parts.size() == 5);
  for (std::size_t i = 1; i < s.parts.size(); ++i) CHECK(s.parts[i - 1] >= s.parts[i]);
  double total = s.residual;
  for (double p : s.parts) total += p;
  CHECK(std::fabs(total - 1.0) < 1e-12);
  CHECK(s.residual >= 0.0);
}

TEST_CASE("identical seeds give identical samples") {
  Rng a(991), b(991);
  const StickSample sa = sample_pd(PDParams{2.0}, 4, a);
  const StickSample sb = sample_pd(PDParams{2.0}, 4, b);
  CHECK(sa.parts == sb.parts);
  CHECK(sa.residual == sb.residual);
}

TEST_CASE("validation") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_pd(PDParams{1.0}, 0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_pd(PDParams{0.0}, 1, rng), std::domain_error);
  CHECK_THROWS_AS(sample_pd(PDParams{-2.0}, 1, rng), std::domain_error);
}

TEST_CASE("PD(1) largest part against the Dickman law, 1e6 replicates") {
  const FunctionTable rho = solve_dickman(32.0, 1e-3);
  const long long R = 1'000'000;
  Rng rng(20250514);
  long long le05 = 0, le06 = 0, le08 = 0;
  double sum_x1 = 0.0;
  for (long long r = 0; r < R; ++r) {
    const StickSample s = sample_pd(PDParams{1.0}, 1, rng);
    const double x1 = s.parts[0];
    sum_x1 += x1;
    le05 += x1 <= 0.5;
    le06 += x1 <= 0.6;
    le08 += x1 <= 0.8;
  }
  const auto band = [&](long long hits, double p_true, double sigmas) {
    const double emp = static_cast<double>(hits) / R;
    const double sd = std::sqrt(p_true * (1 - p_true) / R);
    return std::fabs(emp - p_true) <= sigmas * sd;
  };
  // Pr(X1 <= t) = rho(1/t)
  CHECK(band(le05, rho.value_at(2.0), 4.0));
  CHECK(band(le06, 1.0 + std::log(0.6), 3.0));  // rho(5/3) = 1 - log(5/3)
  CHECK(band(le08, rho.value_at(1.25), 4.0));

  // E X1 = 1 - int_0^1 rho(1/t) dt, by quadrature on the table
  const double ex1 = 1.0 - oracle::simpson(
                               [&](double t) {
                                 if (t <= 0.0) return 0.0;
                                 return rho.value_or_tail_zero(1.0 / t);
                               },
                               0.0, 1.0, 1e-10);
  CHECK(std::fabs(ex1 - 0.6243299885435508) < 1e-6);  // Golomb-Dickman, frozen
  const double sd_mean = 0.25 / std::sqrt(static_cast<double>(R));  // Var(X1) < 1/16
  CHECK(std::fabs(sum_x1 / R - ex1) <= 3.0 * sd_mean);
}
