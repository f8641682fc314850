#pragma once

#include <cstdint>
#include <string>

namespace zbases {

/// GF(p^3) as GF(p)[x] / (x^3 + c2 x^2 + c1 x + c0).
struct FieldSpec {
  std::uint64_t p = 0;
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;
  std::uint64_t c2 = 0;

  /// Value of the modulus polynomial at t, mod p.
  std::uint64_t eval_modulus(std::uint64_t t) const;
  /// e.g. "x^3+2x+1"
  std::string modulus_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// a + b*beta + c*beta^2, beta the class of x. Coefficients in [0, p).
struct CubicExtElement {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;

  static constexpr CubicExtElement one() { return {1, 0, 0}; }
  static constexpr CubicExtElement beta() { return {0, 1, 0}; }
  bool is_zero() const { return a == 0 && b == 0 && c == 0; }

  friend bool operator==(const CubicExtElement&, const CubicExtElement&) = default;
};

/// Lexicographically first (c2, c1, c0) monic cubic with no root in GF(p).
/// Requires p prime, p <= 1e6.
FieldSpec find_irreducible_cubic(std::uint64_t p);

CubicExtElement field_add(const FieldSpec& spec, const CubicExtElement& x, const CubicExtElement& y);
CubicExtElement field_mul(const FieldSpec& spec, const CubicExtElement& x, const CubicExtElement& y);
CubicExtElement field_pow(const FieldSpec& spec, CubicExtElement x, std::uint64_t e);

/// First element in ascending (c, b, a) order whose multiplicative order is
/// exactly p^3 - 1.
CubicExtElement find_primitive(const FieldSpec& spec);

std::string to_string(const CubicExtElement& x);

}  // namespace zbases
