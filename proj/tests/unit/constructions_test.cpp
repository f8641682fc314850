#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zbases/certificate.hpp"
#include "zbases/constructions.hpp"
#include "zbases/errors.hpp"

using namespace zbases;

namespace {

bool naive_is_basis(const ResidueSet& a, bool additive) {
  for (const auto c : oracle::naive_counts(a, additive)) {
    if (c == 0) return false;
  }
  return true;
}

// Every basis of Z_m of the given kind, by enumeration of all subsets.
std::vector<ResidueSet> all_bases(std::uint64_t m, bool additive) {
  std::vector<ResidueSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::uint64_t> members;
    for (std::uint64_t x = 0; x < m; ++x) {
      if ((mask >> x) & 1) members.push_back(x);
    }
    ResidueSet a(m, members);
    if (naive_is_basis(a, additive)) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

TEST_CASE("admissible_nonresidue") {
  CHECK(admissible_nonresidue(13) == 2);
  CHECK(admissible_nonresidue(7) == 3);
  CHECK(admissible_nonresidue(17) == 3);
  CHECK(admissible_nonresidue(11) == 2);
  CHECK_THROWS_AS(admissible_nonresidue(3), NoAdmissibleNonresidue);
  CHECK_THROWS_AS(admissible_nonresidue(5), NoAdmissibleNonresidue);
  CHECK_THROWS_AS(admissible_nonresidue(2), PreconditionViolated);
  CHECK_THROWS_AS(admissible_nonresidue(15), PreconditionViolated);

  for (std::uint64_t p = 13; p < 400; p += 2) {
    if (!is_prime(p)) continue;
    const auto r = admissible_nonresidue(p);
    bool is_square = false;
    for (std::uint64_t x = 1; x < p; ++x) is_square = is_square || x * x % p == r;
    CHECK_FALSE(is_square);
    CHECK((r + 1) % p != 0);
    CHECK((3 * r + 1) % p != 0);
    CHECK((r + 3) % p != 0);
  }
}

TEST_CASE("chen_plane_set") {
  const auto b = chen_plane_set(13, 2);
  CHECK(b.points.size() == 37);
  CHECK(std::binary_search(b.points.begin(), b.points.end(), std::pair<std::uint32_t, std::uint32_t>{0, 0}));
  const auto prof = plane_profile(b);
  CHECK(prof.min >= 1);
  CHECK(prof.max <= 16);

  for (const std::uint64_t p : {13, 17, 19, 23, 29, 31}) {
    const auto r = admissible_nonresidue(p);
    const auto plane = chen_plane_set(p, r);
    CHECK(plane.points.size() <= 3 * p);
    for (const auto& [u, v] : plane.points) {
      CHECK(u < p);
      CHECK(v < p);
    }
  }
  // r = 12 = -1 mod 13 makes Q_{r+1} degenerate; the range check catches it.
  CHECK_THROWS_AS(chen_plane_set(13, 12), VerificationFailed);
}

TEST_CASE("lift_to_two_p_squared") {
  const auto a = lift_to_two_p_squared(13);
  CHECK(a.modulus() == 338);
  CHECK(a.size() == 74);
  CHECK(a.size() <= 12 * 13);
  CHECK(naive_is_basis(a, true));

  for (const std::uint64_t p : {17, 19, 23, 29}) {
    const auto r = admissible_nonresidue(p);
    const auto plane = chen_plane_set(p, r);
    const auto lifted = lift_to_two_p_squared(p);
    CHECK(lifted.size() == 2 * plane.points.size());
    CHECK(lifted.size() <= 12 * p);
    CHECK(naive_is_basis(lifted, true));
  }
  CHECK_THROWS_AS(lift_to_two_p_squared(11), PreconditionViolated);
  CHECK_THROWS_AS(lift_to_two_p_squared(15), PreconditionViolated);
}

TEST_CASE("additive_lift examples") {
  CHECK(additive_lift(ResidueSet(3, {0, 1}), 5) == ResidueSet(5, {0, 1, 2, 3}));
  CHECK(additive_lift(ResidueSet(4, {0, 1, 2}), 7) == ResidueSet(7, {0, 1, 2, 3, 4, 5}));
  CHECK_THROWS_AS(additive_lift(ResidueSet(4, {0, 1, 2}), 8), PreconditionViolated);
  CHECK_THROWS_AS(additive_lift(ResidueSet(4, {0, 1, 2}), 4), PreconditionViolated);
  CHECK_THROWS_AS(additive_lift(ResidueSet(7, {1, 2, 4}), 10), PreconditionViolated);
}

TEST_CASE("both lifts preserve the basis property") {
  std::mt19937_64 rng(42);
  for (std::uint64_t m1 = 2; m1 <= 10; ++m1) {
    const auto bases = all_bases(m1, true);
    for (int trial = 0; trial < 10; ++trial) {
      const auto& a = bases[rng() % bases.size()];
      const std::uint64_t m2 = m1 + 1 + rng() % (m1 - 1);
      const auto b = additive_lift(a, m2);
      CHECK(b.size() <= 2 * a.size());
      CHECK(naive_is_basis(b, true));
    }
  }
  for (const std::uint64_t p : {2, 3}) {
    const std::uint64_t n = p * p + p + 1;
    const auto bases = all_bases(n, false);
    for (int trial = 0; trial < 30; ++trial) {
      const auto& a = bases[rng() % bases.size()];
      const std::uint64_t m = n + 1 + rng() % (n - 1);
      const auto b = subtractive_lift(a, p, m);
      CHECK(b.size() <= 2 * a.size());
      CHECK(naive_is_basis(b, false));
    }
  }
}

TEST_CASE("additive_prime_window") {
  const auto w = additive_prime_window(1'000'000, Rational(1, 10));
  CHECK_FALSE(w.contains(500));
  for (std::uint64_t n = 501; n <= 512; ++n) CHECK(w.contains(n));
  CHECK_FALSE(w.contains(513));
  CHECK(primes_in(additive_prime_window(100'000, Rational(1, 10))).empty());

  // Membership matches (2 - eps) 2p^2 < m < 4p^2 exactly.
  for (const std::uint64_t m : {1000ull, 4096ull, 123457ull, 9'999'999ull}) {
    for (const Rational eps : {Rational(1, 10), Rational(1, 3), Rational(7, 9)}) {
      const auto win = additive_prime_window(m, eps);
      for (std::uint64_t p = 1; 4 * p * p < 4 * m; ++p) {
        const Rational pp(static_cast<std::int64_t>(p * p));
        const bool expected = (2 - eps) * 2 * pp < Rational(static_cast<std::int64_t>(m)) &&
                              Rational(static_cast<std::int64_t>(m)) < 4 * pp;
        CHECK(win.contains(p) == expected);
      }
    }
  }
}

TEST_CASE("subtractive_prime_window") {
  const auto w = subtractive_prime_window(1'000'000, Rational(1, 10));
  CHECK(primes_in(w) == std::vector<std::uint64_t>{709, 719});
  CHECK(Rational(19, 10) * 503391 < 1'000'000);
  CHECK(1'000'000 < 2 * 503391);

  for (const std::uint64_t m : {7ull, 100ull, 54321ull, 9'999'999ull}) {
    for (const Rational eps : {Rational(1, 10), Rational(1, 40), Rational(4, 5)}) {
      const auto win = subtractive_prime_window(m, eps);
      for (std::uint64_t p = 1; p * p < 2 * m; ++p) {
        const Rational n(static_cast<std::int64_t>(p * p + p + 1));
        const Rational mm(static_cast<std::int64_t>(m));
        CHECK(win.contains(p) == ((2 - eps) * n < mm && mm < 2 * n));
      }
    }
  }
}

TEST_CASE("ratio bounds") {
  CHECK(additive_ratio_bound(Rational(1, 10)) == Rational(2880, 19));
  CHECK(subtractive_ratio_bound(709, Rational(1, 10)) == Rational(4 * 710 * 710 * 10, 19 * 503391));
}

TEST_CASE("build_additive_basis") {
  const auto cert = build_additive_basis(1'000'000, Rational(1, 10), WindowPolicy::strict);
  CHECK(cert.p == 503);
  CHECK(cert.kind == BasisKind::additive);
  CHECK(cert.set.size() <= 24 * 503);
  CHECK(cert.eps_used == Rational(1, 10));
  CHECK(cert.bound == Rational(2880, 19));
  CHECK(cert.mean <= cert.bound);
  CHECK(cert.mean == Rational(static_cast<std::int64_t>(cert.set.size() * cert.set.size()), 1'000'000));
  CHECK(cert.min_rep >= 1);

  CHECK_THROWS_AS(build_additive_basis(100'000, Rational(1, 10), WindowPolicy::strict), NoPrimeInWindow);
  const auto adaptive = build_additive_basis(100'000, Rational(1, 10), WindowPolicy::adaptive);
  CHECK(adaptive.eps_used <= Rational(2, 5));
  CHECK((adaptive.p == 163 || adaptive.p == 167));
  CHECK(adaptive.mean <= adaptive.bound);

  // Only p = 11 fits, which the Z_{2p^2} step cannot use.
  CHECK_THROWS_AS(build_additive_basis(400, Rational(1, 10), WindowPolicy::adaptive), ConstructionInfeasible);
  CHECK_THROWS_AS(build_additive_basis(3, Rational(1, 10), WindowPolicy::strict), ConstructionInfeasible);
  CHECK_THROWS_AS(build_additive_basis(100'000, Rational(1), WindowPolicy::strict), PreconditionViolated);
}

TEST_CASE("singer_set") {
  CHECK(singer_set(2) == ResidueSet(7, {0, 1, 3}));
  for (const std::uint64_t p : {3, 5, 7, 11}) {
    const auto s = singer_set(p);
    CHECK(s.modulus() == p * p + p + 1);
    CHECK(s.size() == p + 1);
    const auto counts = oracle::naive_counts(s, false);
    CHECK(counts[0] == p + 1);
    for (std::uint64_t k = 1; k < s.modulus(); ++k) CHECK(counts[k] == 1);
  }
  CHECK(singer_set(5).modulus() == 31);
  CHECK_THROWS_AS(singer_set(4), PreconditionViolated);
}

TEST_CASE("subtractive_lift") {
  const auto s = singer_set(3);
  const auto b = subtractive_lift(s, 3, 25);
  CHECK(b.modulus() == 25);
  CHECK(b.size() <= 8);
  CHECK(naive_is_basis(b, false));
  CHECK_THROWS_AS(subtractive_lift(s, 3, 26), PreconditionViolated);
  CHECK_THROWS_AS(subtractive_lift(s, 3, 13), PreconditionViolated);
  CHECK_THROWS_AS(subtractive_lift(ResidueSet(13, {0, 1}), 3, 20), PreconditionViolated);
}

TEST_CASE("build_subtractive_basis") {
  const auto cert = build_subtractive_basis(1'000'000, Rational(1, 10), WindowPolicy::strict);
  CHECK(cert.p == 709);
  CHECK(cert.set.size() <= 1420);
  CHECK(cert.mean <= Rational(20164, 10000));
  CHECK(cert.mean <= cert.bound);
  CHECK(cert.bound == subtractive_ratio_bound(709, Rational(1, 10)));
  CHECK_THROWS_AS(build_subtractive_basis(6, Rational(1, 10), WindowPolicy::adaptive), ConstructionInfeasible);
  CHECK_THROWS_AS(build_subtractive_basis(6, Rational(1, 10), WindowPolicy::strict), ConstructionInfeasible);
}

TEST_CASE("small moduli through both pipelines") {
  for (std::uint64_t m = 339; m < 2000; m += 7) {
    try {
      const auto cert = build_additive_basis(m, Rational(1, 10), WindowPolicy::adaptive);
      CHECK(naive_is_basis(cert.set, true));
      CHECK(cert.mean <= cert.bound);
    } catch (const ConstructionInfeasible&) {
    }
  }
  for (std::uint64_t m = 7; m < 600; ++m) {
    try {
      const auto cert = build_subtractive_basis(m, Rational(1, 10), WindowPolicy::adaptive);
      CHECK(naive_is_basis(cert.set, false));
      CHECK(cert.mean <= cert.bound);
    } catch (const ConstructionInfeasible&) {
    }
  }
}

TEST_CASE("certificates are deterministic and replayable") {
  for (const auto kind : {BasisKind::additive, BasisKind::subtractive}) {
    const auto a = build_basis(kind, 123'457, Rational(1, 10), WindowPolicy::adaptive);
    const auto b = build_basis(kind, 123'457, Rational(1, 10), WindowPolicy::adaptive);
    CHECK(a == b);
    const auto json = certificate_to_json(a);
    CHECK(json == certificate_to_json(b));
    const auto parsed = certificate_from_json(json);
    CHECK(parsed == a);
    CHECK(certificate_to_json(parsed) == json);
    CHECK(reverify(parsed).empty());

    auto tampered = parsed;
    tampered.bound = tampered.mean - Rational(1, 1000);
    CHECK_FALSE(reverify(tampered).empty());
    auto other = parsed;
    other.set = ResidueSet(other.m, {0});
    CHECK_FALSE(reverify(other).empty());
  }
}

TEST_CASE("certificate JSON layout") {
  const auto cert = build_subtractive_basis(25, Rational(1, 10), WindowPolicy::adaptive);
  const auto json = certificate_to_json(cert);
  const auto order = {"\"m\"", "\"kind\"", "\"set\"", "\"size\"", "\"p\"", "\"eps_used\"", "\"construction\"",
                      "\"min_rep\"", "\"max_rep\"", "\"mean\"", "\"bound\""};
  std::size_t pos = 0;
  for (const char* key : order) {
    const auto at = json.find(key, pos);
    CHECK(at != std::string::npos);
    pos = at;
  }
  CHECK_THROWS_AS(certificate_from_json("{\"m\": 5}"), ParseError);
  CHECK_THROWS_AS(certificate_from_json("not json"), ParseError);
  auto broken = json;
  const auto digit = broken.find_first_of("0123456789", broken.find("\"size\""));
  broken.insert(digit, "9");
  CHECK_THROWS_AS(certificate_from_json(broken), ParseError);
}
