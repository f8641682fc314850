#include "zbases/residue_set.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "zbases/errors.hpp"

namespace zbases {

namespace {

constexpr std::size_t word_count(std::uint64_t m) { return (m + 63) / 64; }

void check_modulus(std::uint64_t m) {
  if (m == 0 || m > kMaxModulus) {
    throw std::invalid_argument("modulus out of range: " + std::to_string(m));
  }
}

// Bit vector of length m with cyclic rotation by one position.
class CyclicBits {
 public:
  CyclicBits(std::uint64_t m, std::vector<std::uint64_t> words) : m_(m), words_(std::move(words)) {}

  // bit i moves to bit (i + 1) mod m.
  void rotate_up_one() {
    const std::uint64_t last = m_ - 1;
    const std::uint64_t carry = (words_[last >> 6] >> (last & 63)) & 1;
    std::uint64_t in = carry;
    for (auto& w : words_) {
      const std::uint64_t out = w >> 63;
      w = (w << 1) | in;
      in = out;
    }
    if (const auto tail = m_ & 63; tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
  }

  std::uint32_t and_popcount(std::span<const std::uint64_t> other) const {
    std::uint32_t total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) total += std::popcount(words_[i] & other[i]);
    return total;
  }

 private:
  std::uint64_t m_;
  std::vector<std::uint64_t> words_;
};

void finish(RepProfile& prof) {
  const auto [lo, hi] = std::minmax_element(prof.counts.begin(), prof.counts.end());
  prof.min = *lo;
  prof.max = *hi;
  prof.sum = std::accumulate(prof.counts.begin(), prof.counts.end(), std::uint64_t{0});
  prof.mean = make_rational(static_cast<__int128>(prof.sum), static_cast<__int128>(prof.m));
}

// Each (x, y) pair visits one counter. Inner loop runs over y in two
// monotone segments so no modular reduction is needed.
void pair_loop(const ResidueSet& a, BasisKind kind, std::vector<std::uint32_t>& counts) {
  const auto m = static_cast<Residue>(a.modulus());
  const auto members = a.members();
  std::uint32_t* c = counts.data();
  for (const Residue x : members) {
    if (kind == BasisKind::additive) {
      // x + y < m  <=>  y < m - x
      const auto split = std::lower_bound(members.begin(), members.end(), m - x);
      for (auto it = members.begin(); it != split; ++it) ++c[x + *it];
      for (auto it = split; it != members.end(); ++it) ++c[x + *it - m];
    } else {
      // x - y >= 0  <=>  y <= x
      const auto split = std::upper_bound(members.begin(), members.end(), x);
      for (auto it = members.begin(); it != split; ++it) ++c[x - *it];
      for (auto it = split; it != members.end(); ++it) ++c[x + m - *it];
    }
  }
}

// counts[n] = |A & S_n| where S_n is a rotation of A (subtractive) or of -A
// (additive) by n, advanced one bit per step.
void bit_sliding(const ResidueSet& a, BasisKind kind, std::vector<std::uint32_t>& counts) {
  const std::uint64_t m = a.modulus();
  std::vector<std::uint64_t> start(word_count(m), 0);
  for (const Residue x : a.members()) {
    const std::uint64_t bit = kind == BasisKind::additive ? (m - x) % m : x;
    start[bit >> 6] |= std::uint64_t{1} << (bit & 63);
  }
  CyclicBits sliding(m, std::move(start));
  const auto base = a.words();
  for (std::uint64_t n = 0; n < m; ++n) {
    counts[n] = sliding.and_popcount(base);
    sliding.rotate_up_one();
  }
}

}  // namespace

std::string_view to_string(BasisKind kind) {
  return kind == BasisKind::additive ? "additive" : "subtractive";
}

BasisKind parse_basis_kind(std::string_view text) {
  if (text == "additive") return BasisKind::additive;
  if (text == "subtractive") return BasisKind::subtractive;
  throw ParseError("unknown basis kind '" + std::string(text) + "'");
}

ResidueSet::ResidueSet(std::uint64_t m) : m_(m) {
  check_modulus(m);
  words_.assign(word_count(m), 0);
}

ResidueSet::ResidueSet(std::uint64_t m, std::span<const std::uint64_t> members) : ResidueSet(m) {
  for (const auto raw : members) {
    const auto x = raw % m;
    words_[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
      members_.push_back(static_cast<Residue>(w * 64 + std::countr_zero(bits)));
    }
  }
}

ResidueSet::ResidueSet(std::uint64_t m, std::initializer_list<std::uint64_t> members)
    : ResidueSet(m, std::span<const std::uint64_t>(members.begin(), members.size())) {}

ResidueSet ResidueSet::full(std::uint64_t m) {
  check_modulus(m);
  std::vector<std::uint64_t> all(m);
  std::iota(all.begin(), all.end(), std::uint64_t{0});
  return ResidueSet(m, all);
}

bool ResidueSet::contains(std::uint64_t n) const {
  if (n >= m_) return false;
  return (words_[n >> 6] >> (n & 63)) & 1;
}

ResidueSet ResidueSet::translated(std::uint64_t t) const {
  std::vector<std::uint64_t> out;
  out.reserve(members_.size());
  for (const Residue x : members_) out.push_back(x + t % m_);
  return ResidueSet(m_, out);
}

ResidueSet ResidueSet::dilated(std::uint64_t u) const {
  std::vector<std::uint64_t> out;
  out.reserve(members_.size());
  const std::uint64_t uu = u % m_;
  for (const Residue x : members_) out.push_back(static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * uu) % m_));
  return ResidueSet(m_, out);
}

RepProfile profile(const ResidueSet& a, BasisKind kind, ProfileStrategy strategy) {
  RepProfile prof;
  prof.m = a.modulus();
  prof.kind = kind;
  prof.counts.assign(prof.m, 0);
  if (strategy == ProfileStrategy::pair_loop) {
    pair_loop(a, kind, prof.counts);
  } else {
    bit_sliding(a, kind, prof.counts);
  }
  finish(prof);
  return prof;
}

RepProfile profile(const ResidueSet& a, BasisKind kind) {
  // Pair loop costs |A|^2, sliding costs m^2/64.
  const auto k = static_cast<std::uint64_t>(a.size());
  const bool dense = k * 8 > a.modulus();
  return profile(a, kind, dense ? ProfileStrategy::bit_sliding : ProfileStrategy::pair_loop);
}

RepProfile sigma_profile(const ResidueSet& a) { return profile(a, BasisKind::additive); }
RepProfile delta_profile(const ResidueSet& a) { return profile(a, BasisKind::subtractive); }

BasisCheck verify_basis(const ResidueSet& a, BasisKind kind) {
  BasisCheck check;
  check.profile = profile(a, kind);
  check.is_basis = check.profile.min >= 1;
  return check;
}

Rational mean_of(const ResidueSet& a) {
  const auto k = static_cast<__int128>(a.size());
  return make_rational(k * k, static_cast<__int128>(a.modulus()));
}

VerifiedBasis verify_as_basis(ResidueSet a, BasisKind kind) {
  auto check = verify_basis(a, kind);
  if (!check.is_basis) {
    const auto& counts = check.profile.counts;
    const auto hole = std::find(counts.begin(), counts.end(), 0u) - counts.begin();
    throw VerificationFailed(std::string(to_string(kind)) + " basis check failed in Z_" +
                             std::to_string(a.modulus()) + ": residue " + std::to_string(hole) +
                             " has no representation");
  }
  return VerifiedBasis(std::move(a), std::move(check.profile));
}

std::optional<VerifiedBasis> try_verify_as_basis(ResidueSet a, BasisKind kind) {
  auto check = verify_basis(a, kind);
  if (!check.is_basis) return std::nullopt;
  return VerifiedBasis(std::move(a), std::move(check.profile));
}

}  // namespace zbases
