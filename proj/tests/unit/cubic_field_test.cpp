#include <doctest.h>

#include <random>

#include "zbases/cubic_field.hpp"
#include "zbases/errors.hpp"
#include "zbases/primes.hpp"

using namespace zbases;

namespace {

CubicExtElement random_element(std::mt19937_64& rng, std::uint64_t p) { return {rng() % p, rng() % p, rng() % p}; }

// Multiplicative order by repeated multiplication.
std::uint64_t brute_order(const FieldSpec& f, const CubicExtElement& x) {
  CubicExtElement y = x;
  std::uint64_t k = 1;
  while (!(y == CubicExtElement::one())) {
    y = field_mul(f, y, x);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("find_irreducible_cubic") {
  CHECK(find_irreducible_cubic(2) == FieldSpec{2, 1, 1, 0});
  CHECK(find_irreducible_cubic(2).modulus_string() == "x^3+x+1");
  CHECK(find_irreducible_cubic(3) == FieldSpec{3, 1, 2, 0});  // x^3 + 2x + 1
  CHECK(find_irreducible_cubic(3).modulus_string() == "x^3+2x+1");

  for (const std::uint64_t p : {2, 3, 5, 7, 11, 13, 101, 709}) {
    const auto f = find_irreducible_cubic(p);
    for (std::uint64_t t = 0; t < p; ++t) CHECK(f.eval_modulus(t) != 0);
  }
  CHECK_THROWS_AS(find_irreducible_cubic(9), PreconditionViolated);
}

TEST_CASE("find_irreducible_cubic returns the first root-free cubic") {
  for (const std::uint64_t p : {3, 5, 7}) {
    const auto f = find_irreducible_cubic(p);
    for (std::uint64_t c2 = 0; c2 < p; ++c2) {
      for (std::uint64_t c1 = 0; c1 < p; ++c1) {
        for (std::uint64_t c0 = 0; c0 < p; ++c0) {
          if (std::tie(c2, c1, c0) >= std::tie(f.c2, f.c1, f.c0)) continue;
          const FieldSpec g{p, c0, c1, c2};
          bool root = false;
          for (std::uint64_t t = 0; t < p; ++t) root = root || g.eval_modulus(t) == 0;
          CHECK(root);
        }
      }
    }
  }
}

TEST_CASE("field_mul examples over GF(8)") {
  const auto f = find_irreducible_cubic(2);
  const CubicExtElement beta = CubicExtElement::beta();
  const CubicExtElement beta2{0, 0, 1};
  CHECK(field_mul(f, beta, beta2) == CubicExtElement{1, 1, 0});   // beta^3 = beta + 1
  CHECK(field_mul(f, beta2, beta2) == CubicExtElement{0, 1, 1});  // beta^4 = beta^2 + beta
  CHECK(field_mul(f, CubicExtElement::one(), beta2) == beta2);
}

TEST_CASE("field_pow examples") {
  const auto f2 = find_irreducible_cubic(2);
  CHECK(field_pow(f2, CubicExtElement::beta(), 7) == CubicExtElement::one());
  CHECK(field_pow(f2, CubicExtElement{1, 1, 0}, 0) == CubicExtElement::one());
  for (const std::uint64_t p : {3, 5, 7}) {
    const auto f = find_irreducible_cubic(p);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 50; ++i) {
      const auto x = random_element(rng, p);
      if (x.is_zero()) continue;
      CHECK(field_pow(f, x, p * p * p - 1) == CubicExtElement::one());
    }
  }
}

TEST_CASE("field axioms on random triples") {
  for (const std::uint64_t p : {2, 3, 5, 7}) {
    const auto f = find_irreducible_cubic(p);
    std::mt19937_64 rng(100 + p);
    for (int i = 0; i < 300; ++i) {
      const auto x = random_element(rng, p);
      const auto y = random_element(rng, p);
      const auto z = random_element(rng, p);
      CHECK(field_mul(f, x, y) == field_mul(f, y, x));
      CHECK(field_mul(f, field_mul(f, x, y), z) == field_mul(f, x, field_mul(f, y, z)));
      CHECK(field_mul(f, x, field_add(f, y, z)) == field_add(f, field_mul(f, x, y), field_mul(f, x, z)));
    }
  }
}

TEST_CASE("find_primitive") {
  const auto f2 = find_irreducible_cubic(2);
  CHECK(find_primitive(f2) == CubicExtElement::beta());

  const auto f3 = find_irreducible_cubic(3);
  CHECK(brute_order(f3, find_primitive(f3)) == 26);

  for (const std::uint64_t p : {5, 7, 11, 13, 709, 2237}) {
    const auto f = find_irreducible_cubic(p);
    const auto g = find_primitive(f);
    const std::uint64_t order = p * p * p - 1;
    for (const auto q : prime_factors(order)) CHECK_FALSE(field_pow(f, g, order / q) == CubicExtElement::one());
    CHECK(field_pow(f, g, order) == CubicExtElement::one());
  }
  const auto f5 = find_irreducible_cubic(5);
  CHECK(brute_order(f5, find_primitive(f5)) == 124);
}
