#include "zbases/constructions.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "zbases/errors.hpp"

namespace zbases {

namespace {

void require_eps(const Rational& eps) {
  if (!(eps > 0 && eps < 1)) throw PreconditionViolated("eps must lie in (0, 1), got " + to_string(eps));
}

// Two pieces of eps = n/d used by every window and bound: d and 2d - n.
struct EpsParts {
  __int128 den;
  __int128 two_minus;  // (2 - eps) * den
};

EpsParts eps_parts(const Rational& eps) {
  const __int128 d = eps.denominator();
  return {d, 2 * d - eps.numerator()};
}

std::vector<std::uint64_t> as_u64(std::span<const Residue> xs) { return {xs.begin(), xs.end()}; }

// Shared body of both modulus lifts: B = A u (A + r) in Z_{m2}, r = m2 - m1.
VerifiedBasis doubling_lift(const VerifiedBasis& a, std::uint64_t m2) {
  const std::uint64_t r = m2 - a.set().modulus();
  auto members = as_u64(a.set().members());
  const std::size_t k = members.size();
  for (std::size_t i = 0; i < k; ++i) members.push_back(members[i] + r);
  ResidueSet b(m2, members);
  return verify_as_basis(std::move(b), a.kind());
}

std::optional<std::uint64_t> first_usable(const std::vector<std::uint64_t>& primes, std::uint64_t min_prime) {
  for (const auto p : primes) {
    if (p >= min_prime) return p;
  }
  return std::nullopt;
}

struct PipelineChoice {
  std::uint64_t p;
  Rational eps;
};

// Walks the eps schedule for the policy and returns the first window that
// holds a prime >= min_prime.
template <typename WindowFn>
PipelineChoice choose_prime(std::uint64_t m, Rational eps, WindowPolicy policy, std::uint64_t min_prime,
                            WindowFn window_for) {
  while (true) {
    const PrimeWindow w = window_for(m, eps);
    if (const auto p = first_usable(primes_in(w), min_prime)) return {*p, eps};
    if (policy == WindowPolicy::strict) {
      throw NoPrimeInWindow("no prime in " + w.describe() + " for m=" + std::to_string(m) +
                            " eps=" + to_string(eps));
    }
    if (eps >= kAdaptiveEpsCap) {
      throw ConstructionInfeasible("no prime in " + w.describe() + " for m=" + std::to_string(m) +
                                   " even at eps=" + to_string(eps));
    }
    eps = std::min(eps * 2, kAdaptiveEpsCap);
  }
}

Certificate certify(const VerifiedBasis& b, std::uint64_t p, const Rational& eps, std::string construction,
                    Rational bound) {
  Certificate cert;
  cert.m = b.set().modulus();
  cert.kind = b.kind();
  cert.set = b.set();
  cert.p = p;
  cert.eps_used = eps;
  cert.construction = std::move(construction);
  cert.min_rep = b.profile().min;
  cert.max_rep = b.profile().max;
  cert.mean = mean_of(b.set());
  cert.bound = bound;
  if (cert.mean != b.profile().mean) throw VerificationFailed("profile mean disagrees with |B|^2/m");
  if (cert.mean > cert.bound) {
    throw VerificationFailed("mean " + to_string(cert.mean) + " exceeds guaranteed bound " + to_string(cert.bound));
  }
  return cert;
}

}  // namespace

PlaneSet parabola(std::uint64_t p, std::uint64_t k) {
  PlaneSet q{p, {}};
  for (std::uint64_t u = 0; u < p; ++u) {
    q.points.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(k % p * (u * u % p) % p));
  }
  std::sort(q.points.begin(), q.points.end());
  return q;
}

PlaneProfile plane_profile(const PlaneSet& b) {
  const std::uint64_t p = b.p;
  PlaneProfile prof{p, std::vector<std::uint32_t>(p * p, 0), 0, 0};
  for (const auto& [u1, v1] : b.points) {
    for (const auto& [u2, v2] : b.points) {
      const std::uint64_t c = (u1 + u2) % p;
      const std::uint64_t d = (v1 + v2) % p;
      ++prof.counts[c + p * d];
    }
  }
  const auto [lo, hi] = std::minmax_element(prof.counts.begin(), prof.counts.end());
  prof.min = *lo;
  prof.max = *hi;
  return prof;
}

std::uint64_t admissible_nonresidue(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw PreconditionViolated("admissible_nonresidue: p must be an odd prime");
  for (std::uint64_t r = 1; r < p; ++r) {
    if (pow_mod(r, (p - 1) / 2, p) != p - 1) continue;  // Euler's criterion
    if ((r + 1) % p == 0 || (3 * r + 1) % p == 0 || (r + 3) % p == 0) continue;
    return r;
  }
  throw NoAdmissibleNonresidue("no admissible quadratic nonresidue mod " + std::to_string(p));
}

PlaneSet chen_plane_set(std::uint64_t p, std::uint64_t r) {
  if (p < 3 || !is_prime(p)) throw PreconditionViolated("chen_plane_set: p must be an odd prime");
  PlaneSet b{p, {}};
  for (const std::uint64_t k : {(r + 1) % p, r % p * ((r + 1) % p) % p, 2 * r % p}) {
    const auto q = parabola(p, k);
    b.points.insert(b.points.end(), q.points.begin(), q.points.end());
  }
  std::sort(b.points.begin(), b.points.end());
  b.points.erase(std::unique(b.points.begin(), b.points.end()), b.points.end());

  const auto prof = plane_profile(b);
  if (prof.min < 1 || prof.max > 16) {
    throw VerificationFailed("Chen plane set for p=" + std::to_string(p) + ", r=" + std::to_string(r) +
                             " has representation range [" + std::to_string(prof.min) + ", " +
                             std::to_string(prof.max) + "], expected within [1, 16]");
  }
  return b;
}

VerifiedBasis two_p_squared_basis(std::uint64_t p) {
  if (p <= 11 || !is_prime(p)) throw PreconditionViolated("two_p_squared_basis: p must be a prime > 11");
  const PlaneSet b = chen_plane_set(p, admissible_nonresidue(p));
  const std::uint64_t m = 2 * p * p;
  std::vector<std::uint64_t> members;
  members.reserve(2 * b.points.size());
  for (const auto& [u, v] : b.points) {
    members.push_back(u + 2 * p * v);
    members.push_back(u + 2 * p * v + p);
  }
  auto a = verify_as_basis(ResidueSet(m, members), BasisKind::additive);
  if (a.set().size() > 12 * p) {
    throw VerificationFailed("Z_2p^2 basis has size " + std::to_string(a.set().size()) + " > 12p");
  }
  return a;
}

ResidueSet lift_to_two_p_squared(std::uint64_t p) { return two_p_squared_basis(p).set(); }

VerifiedBasis additive_lift(const VerifiedBasis& a, std::uint64_t m2) {
  const std::uint64_t m1 = a.set().modulus();
  if (a.kind() != BasisKind::additive) throw PreconditionViolated("additive_lift: input is not an additive basis");
  if (!(m1 < m2 && m2 < 2 * m1)) {
    throw PreconditionViolated("additive_lift: need m1 < m2 < 2*m1, got m1=" + std::to_string(m1) +
                               " m2=" + std::to_string(m2));
  }
  return doubling_lift(a, m2);
}

ResidueSet additive_lift(const ResidueSet& a, std::uint64_t m2) {
  const std::uint64_t m1 = a.modulus();
  if (!(m1 < m2 && m2 < 2 * m1)) {
    throw PreconditionViolated("additive_lift: need m1 < m2 < 2*m1, got m1=" + std::to_string(m1) +
                               " m2=" + std::to_string(m2));
  }
  auto basis = try_verify_as_basis(a, BasisKind::additive);
  if (!basis) throw PreconditionViolated("additive_lift: input is not an additive basis");
  return additive_lift(*basis, m2).set();
}

PrimeWindow additive_prime_window(std::uint64_t m, const Rational& eps) {
  require_eps(eps);
  if (m < 4) throw PreconditionViolated("additive_prime_window: m must be >= 4");
  const auto [den, two_minus] = eps_parts(eps);
  const auto mm = static_cast<__int128>(m);
  return PrimeWindow(WindowBound{4, 0, -mm}, WindowBound{2 * two_minus, 0, -mm * den});
}

SingerConstruction singer_construction(std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionViolated("singer_set: p must be prime");
  const FieldSpec field = find_irreducible_cubic(p);
  const CubicExtElement alpha = find_primitive(field);
  const std::uint64_t n = p * p + p + 1;
  std::vector<std::uint64_t> exponents;
  exponents.reserve(p + 1);
  CubicExtElement power = CubicExtElement::one();
  for (std::uint64_t i = 0; i < n; ++i) {
    if (power.c == 0) exponents.push_back(i);
    power = field_mul(field, power, alpha);
  }
  auto basis = verify_as_basis(ResidueSet(n, exponents), BasisKind::subtractive);
  const auto& counts = basis.profile().counts;
  const bool perfect = counts[0] == p + 1 && std::all_of(counts.begin() + 1, counts.end(), [](auto c) { return c == 1; });
  if (!perfect) throw VerificationFailed("Singer set for p=" + std::to_string(p) + " is not a perfect difference set");
  return {field, alpha, std::move(basis)};
}

ResidueSet singer_set(std::uint64_t p) { return singer_construction(p).basis.set(); }

VerifiedBasis subtractive_lift(const VerifiedBasis& a, std::uint64_t p, std::uint64_t m) {
  const std::uint64_t n = p * p + p + 1;
  if (a.kind() != BasisKind::subtractive) throw PreconditionViolated("subtractive_lift: input is not a subtractive basis");
  if (a.set().modulus() != n) throw PreconditionViolated("subtractive_lift: set modulus must be p^2+p+1");
  if (!(n < m && m < 2 * n)) {
    throw PreconditionViolated("subtractive_lift: need p^2+p+1 < m < 2(p^2+p+1), got m=" + std::to_string(m));
  }
  return doubling_lift(a, m);
}

ResidueSet subtractive_lift(const ResidueSet& a, std::uint64_t p, std::uint64_t m) {
  const std::uint64_t n = p * p + p + 1;
  if (a.modulus() != n) throw PreconditionViolated("subtractive_lift: set modulus must be p^2+p+1");
  if (!(n < m && m < 2 * n)) {
    throw PreconditionViolated("subtractive_lift: need p^2+p+1 < m < 2(p^2+p+1), got m=" + std::to_string(m));
  }
  auto basis = try_verify_as_basis(a, BasisKind::subtractive);
  if (!basis) throw PreconditionViolated("subtractive_lift: input is not a subtractive basis");
  return subtractive_lift(*basis, p, m).set();
}

PrimeWindow subtractive_prime_window(std::uint64_t m, const Rational& eps) {
  require_eps(eps);
  if (m < 7) throw PreconditionViolated("subtractive_prime_window: m must be >= 7");
  const auto [den, two_minus] = eps_parts(eps);
  const auto mm = static_cast<__int128>(m);
  // (2x+1)^2 - (2m-3) = 4x^2 + 4x + 4 - 2m
  return PrimeWindow(WindowBound{4, 4, 4 - 2 * mm}, WindowBound{two_minus, two_minus, two_minus - mm * den});
}

std::string_view to_string(WindowPolicy policy) { return policy == WindowPolicy::strict ? "strict" : "adaptive"; }

WindowPolicy parse_window_policy(std::string_view text) {
  if (text == "strict") return WindowPolicy::strict;
  if (text == "adaptive") return WindowPolicy::adaptive;
  throw ParseError("unknown policy '" + std::string(text) + "'");
}

Rational additive_ratio_bound(const Rational& eps) {
  const auto [den, two_minus] = eps_parts(eps);
  return make_rational(288 * den, two_minus);
}

Rational subtractive_ratio_bound(std::uint64_t p, const Rational& eps) {
  const auto [den, two_minus] = eps_parts(eps);
  const auto pp = static_cast<__int128>(p);
  return make_rational(4 * (pp + 1) * (pp + 1) * den, two_minus * (pp * pp + pp + 1));
}

Certificate build_additive_basis(std::uint64_t m, const Rational& eps, WindowPolicy policy) {
  require_eps(eps);
  // The smallest usable prime is 13, so 2*13^2 < m is necessary.
  if (m <= 2 * 13 * 13) throw ConstructionInfeasible("additive pipeline needs m > 338, got m=" + std::to_string(m));
  const auto [p, eps_used] = choose_prime(m, eps, policy, 13, additive_prime_window);
  const VerifiedBasis base = two_p_squared_basis(p);
  const VerifiedBasis lifted = additive_lift(base, m);
  std::ostringstream desc;
  desc << "chen-2p2-lift nonresidue=" << admissible_nonresidue(p) << " base=" << base.set().modulus()
       << " base_size=" << base.set().size() << " offset=" << m - base.set().modulus();
  return certify(lifted, p, eps_used, desc.str(), additive_ratio_bound(eps_used));
}

Certificate build_subtractive_basis(std::uint64_t m, const Rational& eps, WindowPolicy policy) {
  require_eps(eps);
  if (m < 7) throw ConstructionInfeasible("subtractive pipeline needs m >= 7, got m=" + std::to_string(m));
  const auto [p, eps_used] = choose_prime(m, eps, policy, 2, subtractive_prime_window);
  const SingerConstruction singer = singer_construction(p);
  const VerifiedBasis lifted = subtractive_lift(singer.basis, p, m);
  std::ostringstream desc;
  desc << "singer-lift field=" << singer.field.modulus_string() << " primitive=" << to_string(singer.primitive)
       << " base=" << singer.basis.set().modulus() << " base_size=" << singer.basis.set().size()
       << " offset=" << m - singer.basis.set().modulus();
  return certify(lifted, p, eps_used, desc.str(), subtractive_ratio_bound(p, eps_used));
}

Certificate build_basis(BasisKind kind, std::uint64_t m, const Rational& eps, WindowPolicy policy) {
  return kind == BasisKind::additive ? build_additive_basis(m, eps, policy) : build_subtractive_basis(m, eps, policy);
}

std::string reverify(const Certificate& cert) {
  const auto check = verify_basis(cert.set, cert.kind);
  if (!check.is_basis) return "stored set is not a " + std::string(to_string(cert.kind)) + " basis";
  if (check.profile.min != cert.min_rep || check.profile.max != cert.max_rep) return "stored min/max do not match the profile";
  if (cert.mean != mean_of(cert.set)) return "stored mean does not equal |set|^2/m";
  if (cert.mean > cert.bound) return "stored mean exceeds stored bound";
  Certificate rebuilt;
  try {
    rebuilt = build_basis(cert.kind, cert.m, cert.eps_used, WindowPolicy::strict);
  } catch (const Error& e) {
    return std::string("rebuild failed: ") + e.what();
  }
  if (!(rebuilt == cert)) return "rebuilt certificate differs from the stored one";
  return {};
}

}  // namespace zbases
