#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "zbases/rational.hpp"

namespace zbases {

using Residue = std::uint32_t;

/// Largest supported modulus. Keeps |A|^2 inside a signed 64-bit integer.
inline constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

enum class BasisKind { additive, subtractive };

std::string_view to_string(BasisKind kind);
/// Accepts "additive" / "subtractive". Throws ParseError.
BasisKind parse_basis_kind(std::string_view text);

/// A subset A of Z_m, stored as a membership bit vector of length m.
///
/// Immutable after construction. The sorted member list is kept next to the
/// bits since both profile strategies need one or the other.
class ResidueSet {
 public:
  /// Empty subset of Z_m. Throws std::invalid_argument for m == 0 or
  /// m > kMaxModulus.
  explicit ResidueSet(std::uint64_t m);

  /// Members are reduced mod m; duplicates collapse.
  ResidueSet(std::uint64_t m, std::span<const std::uint64_t> members);
  ResidueSet(std::uint64_t m, std::initializer_list<std::uint64_t> members);

  static ResidueSet full(std::uint64_t m);

  std::uint64_t modulus() const { return m_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::uint64_t n) const;

  /// Sorted canonical representatives in [0, m).
  std::span<const Residue> members() const { return members_; }
  std::span<const std::uint64_t> words() const { return words_; }

  /// {a + t mod m}.
  ResidueSet translated(std::uint64_t t) const;
  /// {u*a mod m}.
  ResidueSet dilated(std::uint64_t u) const;

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

 private:
  std::uint64_t m_;
  std::vector<std::uint64_t> words_;
  std::vector<Residue> members_;
};

/// Representation counts of A over all of Z_m (ordered pairs, x == y allowed).
struct RepProfile {
  std::uint64_t m = 0;
  BasisKind kind = BasisKind::additive;
  std::vector<std::uint32_t> counts;
  std::uint32_t min = 0;
  std::uint32_t max = 0;
  std::uint64_t sum = 0;
  Rational mean;
};

/// counts[n] = #{(x, y) in A x A : x + y = n (mod m)}.
RepProfile sigma_profile(const ResidueSet& a);
/// counts[n] = #{(x, y) in A x A : x - y = n (mod m)}.
RepProfile delta_profile(const ResidueSet& a);
RepProfile profile(const ResidueSet& a, BasisKind kind);

/// Profile computation strategies, exposed so tests can pin each one against
/// the naive oracle. sigma_profile / delta_profile pick one by density.
enum class ProfileStrategy { pair_loop, bit_sliding };
RepProfile profile(const ResidueSet& a, BasisKind kind, ProfileStrategy strategy);

struct BasisCheck {
  bool is_basis = false;
  RepProfile profile;
};

BasisCheck verify_basis(const ResidueSet& a, BasisKind kind);

/// |A|^2 / m, exact. Equals the profile mean for either kind.
Rational mean_of(const ResidueSet& a);

/// A set together with its profile, known to have every count >= 1.
/// Only obtainable through verify_as_basis, so holding one is proof the
/// basis check ran.
class VerifiedBasis {
 public:
  const ResidueSet& set() const { return set_; }
  const RepProfile& profile() const { return profile_; }
  BasisKind kind() const { return profile_.kind; }

 private:
  VerifiedBasis(ResidueSet set, RepProfile profile)
      : set_(std::move(set)), profile_(std::move(profile)) {}
  friend VerifiedBasis verify_as_basis(ResidueSet, BasisKind);
  friend std::optional<VerifiedBasis> try_verify_as_basis(ResidueSet, BasisKind);

  ResidueSet set_;
  RepProfile profile_;
};

/// Throws VerificationFailed if some residue has no representation.
VerifiedBasis verify_as_basis(ResidueSet a, BasisKind kind);
std::optional<VerifiedBasis> try_verify_as_basis(ResidueSet a, BasisKind kind);

}  // namespace zbases
