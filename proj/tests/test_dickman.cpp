#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracle_helpers.hpp"
#include "pdlimits/dickman.hpp"
#include "pdlimits/special.hpp"

using namespace pdl;

TEST_CASE("rho is 1 on [0,1] and matches the analytic branch on [1,2]") {
  const FunctionTable rho = solve_dickman(4.0, 1e-3);
  CHECK(rho.value_at(1.0) == 1.0);
  for (int i = 0; i <= rho.per_unit(); ++i) CHECK(rho.values()[i] == 1.0);
  // rho(t) = 1 - log t on [1,2]
  for (double t : {1.1, 1.5, 1.9, 2.0})
    CHECK(std::fabs(rho.value_at(t) - (1.0 - std::log(t))) < 1e-10);
  CHECK(std::fabs(rho.value_at(2.0) - 0.3068528194400547) < 1e-10);
}

TEST_CASE("rho(3) against an independent quadrature of the recurrence") {
  // On [2,3]: rho(3) = rho(2) - int_2^3 (1 - log(v-1)) / v dv, using the
  // analytic [1,2] branch under the integral.
  const double integral =
      oracle::simpson([](double v) { return (1.0 - std::log(v - 1.0)) / v; }, 2.0, 3.0, 1e-13);
  const double expected = (1.0 - std::log(2.0)) - integral;
  CHECK(std::fabs(expected - 0.04860838829113306) < 1e-10);  // frozen from the oracle
  const FunctionTable rho = solve_dickman(3.0, 1e-3);
  CHECK(std::fabs(rho.value_at(3.0) - expected) < 1e-8);
}

TEST_CASE("rho satisfies the integral recurrence t rho(t) = int_{t-1}^t rho") {
  const FunctionTable rho = solve_dickman(6.0, 1e-3);
  for (double t : {1.5, 2.5, 3.5, 4.75}) {
    const double integral =
        oracle::simpson([&](double u) { return rho.value_at(u); }, t - 1.0, t, 1e-12);
    CHECK(std::fabs(t * rho.value_at(t) - integral) < 1e-9);
  }
}

TEST_CASE("rho is positive and non-increasing past 1") {
  const FunctionTable rho = solve_dickman(8.0, 1e-3);
  double prev = 1.0;
  for (std::size_t i = rho.per_unit(); i < rho.values().size(); ++i) {
    CHECK(rho.values()[i] > 0.0);
    CHECK(rho.values()[i] <= prev + 1e-15);
    prev = rho.values()[i];
  }
}

TEST_CASE("solver rejects bad arguments") {
  CHECK_THROWS_AS(solve_dickman(0.5, 1e-3), std::domain_error);
  CHECK_THROWS_AS(solve_dickman(3.0, 0.5), std::domain_error);   // step > 1e-3
  CHECK_THROWS_AS(solve_dickman(3.0, 1.5), std::domain_error);   // step >= 1
  CHECK_THROWS_AS(solve_gtheta(0.0, 3.0, 1e-3), std::domain_error);
  CHECK_THROWS_AS(solve_gtheta(1.0, 3.0, 2e-3), std::domain_error);
}

TEST_CASE("g_1 equals e^{-gamma} rho") {
  const FunctionTable rho = solve_dickman(5.0, 1e-3);
  const FunctionTable g1 = solve_gtheta(1.0, 5.0, 1e-3);
  CHECK(std::fabs(g1.value_at(0.5) - 0.5614594835668851) < 1e-10);  // e^{-gamma}
  const double scale = std::exp(-kEulerGamma);
  double worst = 0.0;
  for (std::size_t i = 0; i < g1.values().size(); ++i)
    worst = std::max(worst, std::fabs(g1.values()[i] - scale * rho.values()[i]));
  CHECK(worst < 1e-8);
  CHECK(std::fabs(g1.value_at(2.5) - scale * rho.value_at(2.5)) < 1e-8);
}

TEST_CASE("g_theta satisfies its integral recurrence for several theta") {
  for (double theta : {0.5, 2.0, 3.5}) {
    const FunctionTable g = solve_gtheta(theta, 5.0, 1e-3);
    // theta < 1: g has a (t-1)^theta cusp at 1, so quadrature crossing that
    // joint sees the interpolants' ~1e-6 cusp-cell error
    const double tol = theta < 1.0 ? 3e-6 : 1e-7;
    for (double t : {1.5, 2.5, 4.0}) {
      const double integral =
          oracle::simpson([&](double u) { return g.value_at(u); }, t - 1.0, t, 1e-12);
      CHECK(std::fabs(t * g.value_at(t) - theta * integral) < tol);
    }
  }
}

TEST_CASE("table interpolation guards its range") {
  const FunctionTable rho = solve_dickman(3.0, 1e-3);
  CHECK_THROWS_AS(rho.value_at(3.5), std::range_error);
  CHECK_THROWS_AS(rho.value_at(-0.1), std::domain_error);
  // terminal value ~0.048 is not negligible, so tail-zero must refuse too
  CHECK_THROWS_AS(rho.value_or_tail_zero(3.5), std::range_error);
  const FunctionTable wide = solve_dickman(32.0, 1e-3);
  CHECK(wide.value_or_tail_zero(50.0) == 0.0);
}

TEST_CASE("tables export two-column CSV at 12 significant digits") {
  const FunctionTable rho = solve_dickman(1.0, 1e-3);
  std::ostringstream os;
  rho.write_csv(os);
  const std::string text = os.str();
  CHECK(text.substr(0, 8) == "t,value\n");
  CHECK(text.find("0.001,1\n") != std::string::npos);
}
