#include <doctest.h>

#include "oracles.hpp"
#include "zbases/constructions.hpp"
#include "zbases/primes.hpp"

using namespace zbases;

namespace {
using U = std::vector<std::uint64_t>;
}

TEST_CASE("is_prime examples") {
  CHECK(is_prime(2));
  CHECK(is_prime(503));
  CHECK_FALSE(is_prime(161));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
}

TEST_CASE("is_prime agrees with a sieve up to 1e6") {
  const auto prime = oracle::sieve(1'000'000);
  for (std::uint64_t n = 0; n <= 1'000'000; ++n) {
    if (is_prime(n) != prime[n]) {
      FAIL("mismatch at " << n);
    }
  }
}

TEST_CASE("is_prime on large inputs") {
  CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
  CHECK_FALSE(is_prime(18446744073709551615ull));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(3825123056546413051ull));  // strong pseudoprime to bases up to 23
  CHECK(is_prime(1'000'000'007ull));
  CHECK_FALSE(is_prime(1'000'000'007ull * 998'244'353ull));
  for (std::uint64_t n = 4'000'000'000ull; n < 4'000'002'000ull; ++n) {
    CHECK(is_prime(n) == oracle::trial_division_is_prime(n));
  }
}

TEST_CASE("primes_in examples") {
  CHECK(primes_in(PrimeWindow::between(Rational(500), Rational(51299, 100))) == U{503, 509});
  CHECK(primes_in(PrimeWindow::between(Rational(7066, 10), Rational(72498, 100))) == U{709, 719});
  CHECK(primes_in(PrimeWindow::between(Rational(1581, 10), Rational(1622, 10))).empty());
  // strict at both ends
  CHECK(primes_in(PrimeWindow::between(Rational(503), Rational(509))).empty());
  CHECK(primes_in(PrimeWindow::between(Rational(0), Rational(12))) == U{2, 3, 5, 7, 11});
  CHECK_THROWS_AS(PrimeWindow::between(Rational(5), Rational(5)), std::invalid_argument);
}

TEST_CASE("primes_in is complete and exact against a sieve") {
  const auto prime = oracle::sieve(200'000);
  for (std::uint64_t lo = 0; lo < 200'000; lo += 1237) {
    const Rational a(static_cast<std::int64_t>(lo) * 7 + 3, 7);
    const Rational b(static_cast<std::int64_t>(lo) + 400, 1);
    U expected;
    for (std::uint64_t n = lo; n <= lo + 400; ++n) {
      if (prime[n] && Rational(static_cast<std::int64_t>(n)) > a && Rational(static_cast<std::int64_t>(n)) < b) {
        expected.push_back(n);
      }
    }
    CHECK(primes_in(PrimeWindow::between(a, b)) == expected);
  }
}

TEST_CASE("window describe") {
  const auto w = additive_prime_window(100'000, Rational(1, 10));
  CHECK(w.describe() == "(158.11…, 162.22…)");
  CHECK(additive_prime_window(1'000'000, Rational(1, 10)).describe() == "(500, 512.98…)");
}

TEST_CASE("count_primes_up_to") {
  CHECK(count_primes_up_to(10) == 4);
  CHECK(count_primes_up_to(100) == 25);
  CHECK(count_primes_up_to(1000) == 168);
  CHECK(count_primes_up_to(1) == 0);
  CHECK(count_primes_up_to(2) == 1);
  const auto prime = oracle::sieve(100'000);
  std::uint64_t pi = 0;
  for (std::uint64_t n = 0; n <= 100'000; ++n) pi += prime[n];
  CHECK(count_primes_up_to(100'000) == pi);
  CHECK(count_primes_up_to(100'000'000) == 5'761'455);
  CHECK_THROWS(count_primes_up_to(100'000'001));
}

TEST_CASE("prime_factors") {
  CHECK(prime_factors(26) == U{2, 13});
  CHECK(prime_factors(7) == U{7});
  CHECK(prime_factors(360) == U{2, 3, 5});
  CHECK(prime_factors(1).empty());
}
