#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracle_helpers.hpp"
#include "pdlimits/pd_density.hpp"

using namespace pdl;

TEST_CASE("f_{1,1} on the flat branch: f(0.7) = 1/0.7") {
  const FunctionTable g1 = solve_gtheta(1.0, 8.0, 1e-3);
  const double x = 0.7;  // (1-x)/x = 3/7 < 1, so rho factor is 1
  const double v = density_f_theta_k(PDParams{1.0}, std::span<const double>(&x, 1), g1);
  CHECK(std::fabs(v - 1.0 / 0.7) < 1e-8);
}

TEST_CASE("density vanishes outside the support") {
  const FunctionTable g1 = solve_gtheta(1.0, 8.0, 1e-3);
  const double over[2] = {0.8, 0.5};  // sum > 1
  CHECK(density_f_theta_k(PDParams{1.0}, over, g1) == 0.0);
  const double unsorted[2] = {0.2, 0.5};
  CHECK(density_f_theta_k(PDParams{1.0}, unsorted, g1) == 0.0);
  const double zero[1] = {0.0};
  CHECK(density_f_theta_k(PDParams{1.0}, zero, g1) == 0.0);
}

TEST_CASE("theta=1 CDF from quadrature matches rho(1/t)") {
  const PdReference ref = PdReference::make(PDParams{1.0});
  const double t = 0.6;
  const double by_quad =
      1.0 - oracle::simpson([&](double x) { return ref.density1(x); }, t, 1.0, 1e-9);
  CHECK(std::fabs(by_quad - (1.0 + std::log(0.6))) < 1e-6);
  CHECK(std::fabs(ref.largest_part_cdf(t) - (1.0 + std::log(0.6))) < 1e-8);
}

TEST_CASE("largest-part CDF basics") {
  const PdReference ref1 = PdReference::make(PDParams{1.0});
  CHECK(ref1.largest_part_cdf(1.0) == 1.0);
  CHECK(std::fabs(ref1.largest_part_cdf(0.5) - 0.3068528194400547) < 1e-8);
  CHECK_THROWS_AS(ref1.largest_part_cdf(0.0), std::domain_error);
  CHECK_THROWS_AS(ref1.largest_part_cdf(-1.0), std::domain_error);

  const PdReference ref2 = PdReference::make(PDParams{2.0});
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double c = ref2.largest_part_cdf(i / 100.0);
    CHECK(c >= prev - 1e-12);
    CHECK(c <= 1.0 + 1e-12);
    prev = c;
  }
  CHECK(ref2.largest_part_cdf(1.0) == 1.0);
}

TEST_CASE("f_{2,1} integrates to 1") {
  const PdReference ref2 = PdReference::make(PDParams{2.0});
  const double mass =
      oracle::simpson([&](double x) { return ref2.density1(x); }, 1e-9, 1.0, 1e-9);
  CHECK(std::fabs(mass - 1.0) < 1e-6);
}

TEST_CASE("insufficient table range raises a range error") {
  const FunctionTable g1 = solve_gtheta(1.0, 3.0, 1e-3);  // terminal value not negligible
  const double x = 0.2;  // argument (1-x)/x = 4 > 3
  CHECK_THROWS_AS(density_f_theta_k(PDParams{1.0}, std::span<const double>(&x, 1), g1),
                  std::range_error);
}

TEST_CASE("theta=0.5 CDF is monotone despite the endpoint singularity") {
  const PdReference ref = PdReference::make(PDParams{0.5});
  double prev = 0.0;
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const double c = ref.largest_part_cdf(t);
    CHECK(c >= prev - 1e-9);
    CHECK(c <= 1.0 + 1e-9);
    prev = c;
  }
}
