#include "zbases/cubic_field.hpp"

#include <algorithm>
#include <stdexcept>

#include "zbases/errors.hpp"
#include "zbases/primes.hpp"

namespace zbases {

std::uint64_t FieldSpec::eval_modulus(std::uint64_t t) const {
  t %= p;
  std::uint64_t v = 1;  // Horner on 1, c2, c1, c0
  v = (v * t + c2) % p;
  v = (v * t + c1) % p;
  v = (v * t + c0) % p;
  return v;
}

std::string FieldSpec::modulus_string() const {
  std::string out = "x^3";
  auto term = [&](std::uint64_t coef, const char* mono) {
    if (coef == 0) return;
    out += '+';
    if (coef != 1 || *mono == '\0') out += std::to_string(coef);
    out += mono;
  };
  term(c2, "x^2");
  term(c1, "x");
  term(c0, "");
  return out;
}

FieldSpec find_irreducible_cubic(std::uint64_t p) {
  if (!is_prime(p) || p > 1'000'000) throw PreconditionViolated("find_irreducible_cubic: p must be a prime <= 1e6");
  for (std::uint64_t c2 = 0; c2 < p; ++c2) {
    for (std::uint64_t c1 = 0; c1 < p; ++c1) {
      for (std::uint64_t c0 = 1; c0 < p; ++c0) {
        const FieldSpec spec{p, c0, c1, c2};
        bool has_root = false;
        for (std::uint64_t t = 0; t < p && !has_root; ++t) has_root = spec.eval_modulus(t) == 0;
        if (!has_root) return spec;
      }
    }
  }
  throw std::logic_error("no irreducible cubic found");  // unreachable for prime p
}

CubicExtElement field_add(const FieldSpec& spec, const CubicExtElement& x, const CubicExtElement& y) {
  const auto p = spec.p;
  return {(x.a + y.a) % p, (x.b + y.b) % p, (x.c + y.c) % p};
}

CubicExtElement field_mul(const FieldSpec& spec, const CubicExtElement& x, const CubicExtElement& y) {
  const std::uint64_t p = spec.p;
  // Coefficients of the degree-4 product; each term < p^2 <= 1e12.
  std::uint64_t d0 = x.a * y.a % p;
  std::uint64_t d1 = (x.a * y.b + x.b * y.a) % p;
  std::uint64_t d2 = (x.a * y.c + x.b * y.b + x.c * y.a) % p;
  std::uint64_t d3 = (x.b * y.c + x.c * y.b) % p;
  const std::uint64_t d4 = x.c * y.c % p;
  // beta^3 = -(c2 beta^2 + c1 beta + c0)
  const std::uint64_t n0 = p - spec.c0, n1 = (p - spec.c1) % p, n2 = (p - spec.c2) % p;
  d1 = (d1 + d4 * n0) % p;
  d2 = (d2 + d4 * n1) % p;
  d3 = (d3 + d4 * n2) % p;
  d0 = (d0 + d3 * n0) % p;
  d1 = (d1 + d3 * n1) % p;
  d2 = (d2 + d3 * n2) % p;
  return {d0, d1, d2};
}

CubicExtElement field_pow(const FieldSpec& spec, CubicExtElement x, std::uint64_t e) {
  CubicExtElement result = CubicExtElement::one();
  while (e > 0) {
    if (e & 1) result = field_mul(spec, result, x);
    x = field_mul(spec, x, x);
    e >>= 1;
  }
  return result;
}

CubicExtElement find_primitive(const FieldSpec& spec) {
  const std::uint64_t p = spec.p;
  const std::uint64_t order = p * p * p - 1;
  // p^3 - 1 = (p - 1)(p^2 + p + 1); factoring the two parts keeps trial
  // division below 1e6 steps.
  auto factors = prime_factors(p - 1);
  for (const auto q : prime_factors(p * p + p + 1)) {
    if (std::find(factors.begin(), factors.end(), q) == factors.end()) factors.push_back(q);
  }
  for (std::uint64_t c = 0; c < p; ++c) {
    for (std::uint64_t b = 0; b < p; ++b) {
      for (std::uint64_t a = 0; a < p; ++a) {
        const CubicExtElement g{a, b, c};
        if (g.is_zero()) continue;
        bool primitive = true;
        for (const auto q : factors) {
          if (field_pow(spec, g, order / q) == CubicExtElement::one()) {
            primitive = false;
            break;
          }
        }
        if (primitive) return g;
      }
    }
  }
  throw std::logic_error("no primitive element found");
}

std::string to_string(const CubicExtElement& x) {
  return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + "," + std::to_string(x.c) + ")";
}

}  // namespace zbases
