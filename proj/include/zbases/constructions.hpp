#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zbases/certificate.hpp"
#include "zbases/cubic_field.hpp"
#include "zbases/primes.hpp"
#include "zbases/rational.hpp"
#include "zbases/residue_set.hpp"

namespace zbases {

/// Subset of the product group Z_p x Z_p. Not to be confused with the cyclic
/// group Z_{p^2}.
struct PlaneSet {
  std::uint64_t p = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> points;  // sorted, unique
};

struct PlaneProfile {
  std::uint64_t p = 0;
  std::vector<std::uint32_t> counts;  // index c + p*d
  std::uint32_t min = 0;
  std::uint32_t max = 0;
};

/// {(u, k u^2) : u in Z_p}
PlaneSet parabola(std::uint64_t p, std::uint64_t k);
PlaneProfile plane_profile(const PlaneSet& b);

/// Smallest quadratic nonresidue r mod p with r+1, 3r+1, r+3 all nonzero
/// mod p. Throws NoAdmissibleNonresidue when there is none (only p <= 11).
std::uint64_t admissible_nonresidue(std::uint64_t p);

/// Q_{r+1} u Q_{r(r+1)} u Q_{2r}; throws VerificationFailed unless every plane
/// point has between 1 and 16 representations.
PlaneSet chen_plane_set(std::uint64_t p, std::uint64_t r);

/// Additive basis of Z_{2p^2} of size <= 12p built from the Chen plane set:
/// A1 = {u + 2pv}, A = A1 u (A1 + p). Requires p prime, p > 11.
VerifiedBasis two_p_squared_basis(std::uint64_t p);
ResidueSet lift_to_two_p_squared(std::uint64_t p);

/// B = A u (A + (m2 - m1)) in Z_{m2}, for m1 < m2 < 2 m1.
VerifiedBasis additive_lift(const VerifiedBasis& a, std::uint64_t m2);
/// Checks A is an additive basis first; PreconditionViolated otherwise.
ResidueSet additive_lift(const ResidueSet& a, std::uint64_t m2);

/// p admitted iff 4p^2 > m and 2(2 - eps)p^2 < m.
PrimeWindow additive_prime_window(std::uint64_t m, const Rational& eps);

struct SingerConstruction {
  FieldSpec field;
  CubicExtElement primitive;
  VerifiedBasis basis;
};

/// Exponents i in [0, p^2+p+1) with alpha^i in span{1, beta}. The result is
/// checked to have difference profile [p+1, 1, ..., 1].
SingerConstruction singer_construction(std::uint64_t p);
ResidueSet singer_set(std::uint64_t p);

/// B = A u (A + (m - n)) in Z_m with n = p^2+p+1 < m < 2n.
VerifiedBasis subtractive_lift(const VerifiedBasis& a, std::uint64_t p, std::uint64_t m);
ResidueSet subtractive_lift(const ResidueSet& a, std::uint64_t p, std::uint64_t m);

/// p admitted iff (2p+1)^2 > 2m - 3 and (2 - eps)(p^2+p+1) < m.
PrimeWindow subtractive_prime_window(std::uint64_t m, const Rational& eps);

enum class WindowPolicy { strict, adaptive };
std::string_view to_string(WindowPolicy policy);
WindowPolicy parse_window_policy(std::string_view text);

/// Largest eps the adaptive policy will try.
inline const Rational kAdaptiveEpsCap{4, 5};

/// 288 / (2 - eps)
Rational additive_ratio_bound(const Rational& eps);
/// 4(p+1)^2 / ((2 - eps)(p^2+p+1))
Rational subtractive_ratio_bound(std::uint64_t p, const Rational& eps);

Certificate build_additive_basis(std::uint64_t m, const Rational& eps, WindowPolicy policy);
Certificate build_subtractive_basis(std::uint64_t m, const Rational& eps, WindowPolicy policy);
Certificate build_basis(BasisKind kind, std::uint64_t m, const Rational& eps, WindowPolicy policy);

/// Rebuilds the certificate from (kind, m, eps_used) under the strict policy,
/// re-runs the basis check on the stored set, and compares field by field.
/// Returns an empty string on success, else a description of the mismatch.
std::string reverify(const Certificate& cert);

}  // namespace zbases
