#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pdlimits/intensity.hpp"

using namespace pdl;

namespace {
IntervalFamily two_intervals() {
  IntervalFamily iv;
  iv.intervals = {{Rational(1, 10), Rational(2, 10)}, {Rational(3, 10), Rational(4, 10)}};
  return iv;
}
}  // namespace

TEST_CASE("interval validation") {
  IntervalFamily bad;
  bad.intervals = {{Rational(0), Rational(1, 2)}};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);  // a must be > 0
  bad.intervals = {{Rational(1, 10), Rational(2, 10)}, {Rational(15, 100), Rational(3, 10)}};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);  // overlap
  bad.intervals = {{Rational(1, 10), Rational(6, 10)}, {Rational(7, 10), Rational(8, 10)}};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);  // sum b >= 1
  IntervalFamily ok = two_intervals();
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("index windows follow the a*n < i <= b*n convention, exactly") {
  IntervalFamily iv;
  iv.intervals = {{Rational(4, 10), Rational(6, 10)}};
  const auto w = iv.index_window(0, 1000);
  REQUIRE(!w.empty());
  CHECK(w.front() == 401);  // 400 excluded: 400/1000 = 0.4 is not > 0.4
  CHECK(w.back() == 600);   // 600 included
}

TEST_CASE("permutation intensity, k=1: the harmonic window sum") {
  const FamilySpec perm = FamilySpec::permutation(1);
  const int n = 1000;
  const CoeffSeries egf = object_series(perm, n);
  IntervalFamily iv;
  iv.intervals = {{Rational(4, 10), Rational(6, 10)}};
  const Rational exact = exact_intensity(perm, egf, n, iv);
  Rational harmonic = 0;
  for (int j = 401; j <= 600; ++j) harmonic += Rational(1, j);
  CHECK(exact == harmonic);
  CHECK(std::fabs(to_double(exact) - std::log(1.5)) < 2e-3);
  // explicit harmonic-sum remainder bound |sum - log(b/a)| <= 1/(a n)
  CHECK(std::fabs(to_double(exact) - std::log(1.5)) <= 1.0 / (0.4 * n));
}

TEST_CASE("permutation intensity, k=2: the product factorizes exactly") {
  const FamilySpec perm = FamilySpec::permutation(1);
  const int n = 500;
  const CoeffSeries egf = object_series(perm, n);
  const IntervalFamily iv = two_intervals();
  const Rational exact = exact_intensity(perm, egf, n, iv);
  Rational h1 = 0, h2 = 0;
  for (int j = 51; j <= 100; ++j) h1 += Rational(1, j);
  for (int j = 151; j <= 200; ++j) h2 += Rational(1, j);
  CHECK(exact == h1 * h2);
  // remainder bound per window, combined with a factor k
  const double target = std::log(2.0) * std::log(4.0 / 3.0);
  CHECK(std::fabs(to_double(exact) - target) <= 2.0 * (1.0 / (0.1 * n)));
}

TEST_CASE("guard suggests MC when the tuple count explodes") {
  const FamilySpec perm = FamilySpec::permutation(1);
  const int n = 40000;
  const CoeffSeries egf = object_series(perm, 10);  // degree irrelevant; guard fires first
  IntervalFamily iv;
  iv.intervals = {{Rational(1, 10), Rational(4, 10)},
                  {Rational(41, 100), Rational(55, 100)}};
  CHECK_THROWS_AS(exact_intensity(perm, egf, n, iv), guard_error);
}

TEST_CASE("MC intensity agrees with the exact sum within 4 sigma") {
  const FamilySpec perm = FamilySpec::permutation(1);
  const int n = 500;
  const CoeffSeries egf = object_series(perm, n);
  const IntervalFamily iv = two_intervals();
  const Rational exact = exact_intensity(perm, egf, n, iv);
  const StructureSampler sampler(perm, n);
  const IntensityReport rep = mc_intensity(sampler, iv, 20000, 616, 1.0);
  CHECK(std::fabs(rep.empirical - to_double(exact)) <= 4.0 * rep.std_error);
  // theta = 1: both (alpha, beta) assignments coincide
  CHECK(rep.rhs_theta.alpha_first == rep.rhs_theta.beta_first);
  CHECK(rep.rhs_master > 0.0);
}

TEST_CASE("PD(2) stick process lands between the two Prop-2 bounds") {
  IntervalFamily iv;
  iv.intervals = {{Rational(2, 10), Rational(5, 10)}};
  const IntensityReport rep = mc_intensity_sticks(PDParams{2.0}, iv, 20000, 77);
  const double expected = 2.0 * (std::log(2.5) - 0.3);  // integral of 2(1-x)/x
  CHECK(std::fabs(rep.empirical - expected) <= 4.0 * rep.std_error);
  CHECK(rep.empirical >= rep.rhs_theta.lo() - 4.0 * rep.std_error);
  CHECK(rep.empirical <= rep.rhs_theta.hi() + 4.0 * rep.std_error);
}

TEST_CASE("replicate doubling shrinks the reported error like sqrt(2)") {
  const FamilySpec perm = FamilySpec::permutation(1);
  const StructureSampler sampler(perm, 200);
  const IntervalFamily iv = two_intervals();
  const IntensityReport a = mc_intensity(sampler, iv, 40000, 10, 1.0);
  const IntensityReport b = mc_intensity(sampler, iv, 80000, 10, 1.0);
  const double shrink = a.std_error / b.std_error;
  CHECK(shrink > std::sqrt(2.0) * 0.9);
  CHECK(shrink < std::sqrt(2.0) * 1.1);
}

TEST_CASE("prime-factor intensity against the Mertens oracle") {
  IntervalFamily iv;
  iv.intervals = {{Rational(2, 10), Rational(5, 10)}};
  const auto sieve = primes_up_to(1024);
  const IntensityReport rep = mc_intensity_primes(1'000'000, iv, 20000, 55, sieve);
  // E multiplicity of p is 1/(p-1) + O(1/n); the plain Mertens sum
  // underestimates it by sum 1/p(p-1), far below the MC noise here
  double oracle = 0;
  for (std::uint32_t p : sieve)
    if (p >= 15.848931924611136 && p <= 1000.0) oracle += 1.0 / (p - 1.0);
  CHECK(std::fabs(rep.empirical - oracle) <= 4.0 * rep.std_error);
  CHECK(rep.rhs_master > 0.8);
  CHECK(rep.rhs_master < 0.9);
}

TEST_CASE("MC validation") {
  const FamilySpec perm = FamilySpec::permutation(1);
  const StructureSampler sampler(perm, 100);
  const IntervalFamily iv = two_intervals();
  CHECK_THROWS_AS(mc_intensity(sampler, iv, 10, 1, 1.0), std::domain_error);
}
