#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pdlimits/dickman.hpp"
#include "pdlimits/primes.hpp"

using namespace pdl;

TEST_CASE("sieve and trial division") {
  const auto sieve = primes_up_to(100);
  CHECK(sieve.size() == 25);
  CHECK(sieve.front() == 2);
  CHECK(sieve.back() == 97);
  const auto f12 = factorize(12, sieve);
  CHECK(f12 == std::vector<std::uint64_t>{2, 2, 3});
  const auto f97 = factorize(97, sieve);
  CHECK(f97 == std::vector<std::uint64_t>{97});
  CHECK(factorize(1, sieve).empty());
}

TEST_CASE("scaled factors of N = 12 at n = 100") {
  // log 3/log 100 >= log 2/log 100, two copies of the latter
  const auto sieve = primes_up_to(16);
  const double logn = std::log(100.0);
  const auto fs = factorize(12, sieve);
  std::vector<double> scaled;
  for (auto it = fs.rbegin(); it != fs.rend(); ++it)
    scaled.push_back(std::log(static_cast<double>(*it)) / logn);
  REQUIRE(scaled.size() == 3);
  CHECK(std::fabs(scaled[0] - std::log(3.0) / logn) < 1e-15);
  CHECK(std::fabs(scaled[1] - std::log(2.0) / logn) < 1e-15);
  CHECK(scaled[1] == scaled[2]);
}

TEST_CASE("sampled sequences are sorted and sum to log N / log n <= 1") {
  const auto sieve = primes_up_to(1024);
  Rng rng(8);
  for (int r = 0; r < 500; ++r) {
    const ScaledSizeSeq s = sample_prime_factors(1'000'000, rng, sieve, 4);
    double sum = 0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      sum += s.values[i];
      if (i > 0) CHECK(s.values[i - 1] >= s.values[i]);
    }
    CHECK(sum <= 1.0 + 1e-12);
  }
}

TEST_CASE("largest scaled factor approaches the Dickman law") {
  const auto sieve = primes_up_to(1024);
  const FunctionTable rho = solve_dickman(3.0, 1e-3);
  Rng rng(314159);
  const int R = 20000;
  int hits = 0;
  for (int r = 0; r < R; ++r) {
    const ScaledSizeSeq s = sample_prime_factors(1'000'000, rng, sieve, 1);
    hits += s.values[0] <= 0.5 ? 1 : 0;
  }
  const double emp = static_cast<double>(hits) / R;
  // slow logarithmic convergence: generous desk-scale band
  CHECK(std::fabs(emp - rho.value_at(2.0)) < 0.06);
}

TEST_CASE("guards and validation") {
  const auto sieve = primes_up_to(1024);
  Rng rng(1);
  CHECK_THROWS_AS(sample_prime_factors(1, rng, sieve), std::domain_error);
  CHECK_THROWS_AS(sample_prime_factors(2'000'000'000ULL, rng, sieve), guard_error);
  const auto tiny = primes_up_to(10);
  CHECK_THROWS_AS(sample_prime_factors(1'000'000, rng, tiny), std::domain_error);
}

TEST_CASE("Mertens window sum at n = 10^6") {
  const auto sieve = primes_up_to(1024);
  const double s = mertens_window_sum(1e6, 0.2, 0.5, sieve);
  // independent direct loop over the same window
  double direct = 0;
  for (std::uint32_t p : sieve)
    if (p >= 15.848931924611136 && p <= 1000.0) direct += 1.0 / p;
  CHECK(std::fabs(s - direct) < 1e-15);
  CHECK(std::fabs(s - 0.8540574831524432) < 1e-9);  // frozen window sum
  CHECK_THROWS_AS(mertens_window_sum(1e6, 0.5, 0.2, sieve), std::domain_error);
  CHECK_THROWS_AS(mertens_window_sum(1e12, 0.2, 0.5, sieve), std::domain_error);
}
