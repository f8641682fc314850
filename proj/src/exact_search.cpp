#include "zbases/exact_search.hpp"

#include <array>
#include <bit>
#include <string>

#include "zbases/errors.hpp"

namespace zbases {

namespace {

using Mask = std::uint64_t;

Mask full_mask(std::uint64_t m) { return m == 64 ? ~Mask{0} : (Mask{1} << m) - 1; }

// Cyclic rotation within the low m bits: bit i -> bit (i + s) mod m.
Mask rotate(Mask mask, std::uint64_t s, std::uint64_t m) {
  s %= m;
  if (s == 0) return mask;
  return ((mask << s) | (mask >> (m - s))) & full_mask(m);
}

ResidueSet mask_to_set(Mask mask, std::uint64_t m) {
  std::vector<std::uint64_t> members;
  for (Mask bits = mask; bits != 0; bits &= bits - 1) members.push_back(std::countr_zero(bits));
  return ResidueSet(m, members);
}

void check_limit(SearchKind kind, std::uint64_t m, const SearchOptions& options) {
  const std::uint64_t limit = std::min(options.max_modulus.value_or(default_search_limit(kind)), kSearchModulusCeiling);
  if (m == 0) throw PreconditionViolated("search: modulus must be positive");
  if (m > limit) {
    throw LimitExceeded(std::string(to_string(kind)) + " search: m=" + std::to_string(m) + " above limit " +
                        std::to_string(limit));
  }
}

std::uint64_t additive_size_floor(std::uint64_t m) {
  std::uint64_t k = 1;
  while (k * (k + 1) / 2 < m) ++k;
  return k;
}

std::uint64_t difference_size_floor(std::uint64_t m) {
  std::uint64_t k = 1;
  while (k * (k - 1) + 1 < m) ++k;
  return k;
}

// Depth-first search state shared by the three searches.
class SubsetSearch {
 public:
  SubsetSearch(SearchKind kind, std::uint64_t m, std::uint64_t budget)
      : kind_(kind), m_(m), full_(full_mask(m)), budget_(budget) {}

  std::uint64_t nodes() const { return nodes_; }
  Mask witness() const { return witness_; }

  // Is there a k-subset containing 0 whose sums (differences) cover Z_m?
  bool cover_with(std::uint64_t k) {
    target_ = k;
    const Mask start = 1;    // {0}
    const Mask covered = 1;  // 0+0, or 0-0
    return kind_ == SearchKind::additive ? extend_sums(start, covered, 1, 0)
                                         : extend_differences(start, start, covered, 1, 0);
  }

  // Is there a set containing 0 with 1 <= sigma(n) <= r everywhere?
  bool bounded_cover(std::uint64_t r) {
    cap_ = r;
    counts_.fill(0);
    counts_[0] = 1;
    std::uint64_t max_size = 1;
    while ((max_size + 1) * (max_size + 1) <= r * m_) ++max_size;
    target_ = std::min(max_size, m_);
    return extend_bounded(1, 1, 1, 0);
  }

 private:
  void visit() {
    if (++nodes_ > budget_) {
      throw LimitExceeded(std::string(to_string(kind_)) + " search: node budget " + std::to_string(budget_) +
                          " exhausted at m=" + std::to_string(m_));
    }
  }

  // Upper bound on new targets reachable by adding j members to a set of s:
  // the i-th addition creates at most (s+i+1) new sums or 2(s+i) differences.
  std::uint64_t reachable(std::uint64_t s, std::uint64_t j) const {
    if (kind_ == SearchKind::subtractive) return 2 * j * s + j * (j - 1);
    return j * s + j * (j + 1) / 2;
  }

  bool extend_sums(Mask set, Mask covered, std::uint64_t size, std::uint64_t last) {
    visit();
    if (size == target_) {
      if (covered != full_) return false;
      witness_ = set;
      return true;
    }
    const std::uint64_t remaining = target_ - size;
    const auto uncovered = static_cast<std::uint64_t>(std::popcount(~covered & full_));
    if (uncovered > reachable(size, remaining)) return false;
    for (std::uint64_t x = last + 1; x + remaining <= m_; ++x) {
      const Mask next = set | (Mask{1} << x);
      if (extend_sums(next, covered | rotate(next, x, m_), size + 1, x)) return true;
    }
    return false;
  }

  bool extend_differences(Mask set, Mask negated, Mask covered, std::uint64_t size, std::uint64_t last) {
    visit();
    if (size == target_) {
      if (covered != full_) return false;
      witness_ = set;
      return true;
    }
    const std::uint64_t remaining = target_ - size;
    const auto uncovered = static_cast<std::uint64_t>(std::popcount(~covered & full_));
    if (uncovered > reachable(size, remaining)) return false;
    for (std::uint64_t x = last + 1; x + remaining <= m_; ++x) {
      const Mask next = set | (Mask{1} << x);
      const Mask next_neg = negated | (Mask{1} << ((m_ - x) % m_));
      // x - a and a - x for every member a
      const Mask diffs = rotate(next_neg, x, m_) | rotate(next, m_ - x, m_);
      if (extend_differences(next, next_neg, covered | diffs, size + 1, x)) return true;
    }
    return false;
  }

  bool extend_bounded(Mask set, Mask covered, std::uint64_t size, std::uint64_t last) {
    visit();
    if (covered == full_) {
      witness_ = set;
      return true;
    }
    const std::uint64_t candidates = last + 1 < m_ ? m_ - 1 - last : 0;
    const std::uint64_t remaining = std::min(target_ - size, candidates);
    const auto uncovered = static_cast<std::uint64_t>(std::popcount(~covered & full_));
    if (uncovered > reachable(size, remaining)) return false;
    for (std::uint64_t x = last + 1; x < m_; ++x) {
      // Apply x, rolling back if some count would pass the cap.
      std::array<std::uint32_t, 64> touched{};
      std::size_t n_touched = 0;
      bool ok = true;
      auto bump = [&](std::uint64_t target, std::uint32_t by) {
        counts_[target] += by;
        touched[n_touched++] = static_cast<std::uint32_t>(target | (std::uint64_t{by} << 8));
        if (counts_[target] > cap_) ok = false;
      };
      Mask added = 0;
      for (Mask bits = set; bits != 0 && ok; bits &= bits - 1) {
        const std::uint64_t t = (x + std::countr_zero(bits)) % m_;
        bump(t, 2);
        added |= Mask{1} << t;
      }
      if (ok) {
        const std::uint64_t t = 2 * x % m_;
        bump(t, 1);
        added |= Mask{1} << t;
      }
      const bool found = ok && extend_bounded(set | (Mask{1} << x), covered | added, size + 1, x);
      for (std::size_t i = 0; i < n_touched; ++i) counts_[touched[i] & 0xff] -= touched[i] >> 8;
      if (found) return true;
    }
    return false;
  }

  SearchKind kind_;
  std::uint64_t m_;
  Mask full_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::uint64_t target_ = 0;
  std::uint64_t cap_ = 0;
  std::array<std::uint32_t, 64> counts_{};
  Mask witness_ = 0;
};

SearchResult size_result(SearchKind kind, std::uint64_t m, std::uint64_t k, Mask witness, std::uint64_t nodes) {
  const auto kk = static_cast<__int128>(k);
  return SearchResult{m, kind, k, mask_to_set(witness, m), make_rational(kk * kk, m), nodes};
}

SearchResult min_size_search(SearchKind kind, std::uint64_t m, const SearchOptions& options) {
  check_limit(kind, m, options);
  SubsetSearch search(kind, m, options.node_budget);
  std::uint64_t k = kind == SearchKind::additive ? additive_size_floor(m) : difference_size_floor(m);
  while (!search.cover_with(k)) ++k;
  return size_result(kind, m, k, search.witness(), search.nodes());
}

// Brute-force representation counts of a mask, independent of the search.
std::array<std::uint32_t, 64> naive_counts(Mask set, std::uint64_t m, bool additive) {
  std::array<std::uint32_t, 64> counts{};
  for (std::uint64_t x = 0; x < m; ++x) {
    if (!((set >> x) & 1)) continue;
    for (std::uint64_t y = 0; y < m; ++y) {
      if (!((set >> y) & 1)) continue;
      ++counts[additive ? (x + y) % m : (x + m - y) % m];
    }
  }
  return counts;
}

}  // namespace

std::string_view to_string(SearchKind kind) {
  switch (kind) {
    case SearchKind::additive: return "ell";
    case SearchKind::subtractive: return "g";
    case SearchKind::ruzsa: return "ruzsa";
  }
  return "?";
}

SearchKind parse_search_kind(std::string_view text) {
  if (text == "ell") return SearchKind::additive;
  if (text == "g") return SearchKind::subtractive;
  if (text == "ruzsa") return SearchKind::ruzsa;
  throw ParseError("unknown search kind '" + std::string(text) + "'");
}

std::uint64_t default_search_limit(SearchKind kind) { return kind == SearchKind::ruzsa ? 20 : 64; }

SearchResult min_additive_basis(std::uint64_t m, const SearchOptions& options) {
  return min_size_search(SearchKind::additive, m, options);
}

SearchResult min_difference_basis(std::uint64_t m, const SearchOptions& options) {
  return min_size_search(SearchKind::subtractive, m, options);
}

SearchResult ruzsa_number(std::uint64_t m, const SearchOptions& options) {
  check_limit(SearchKind::ruzsa, m, options);
  SubsetSearch search(SearchKind::ruzsa, m, options.node_budget);
  // Sum of sigma is |A|^2 and covering needs |A| >= the additive floor.
  const std::uint64_t k = additive_size_floor(m);
  std::uint64_t r = std::max<std::uint64_t>(1, (k * k + m - 1) / m);
  while (!search.bounded_cover(r)) ++r;
  return SearchResult{m, SearchKind::ruzsa, r, mask_to_set(search.witness(), m), Rational(static_cast<std::int64_t>(r)),
                      search.nodes()};
}

SearchResult exact_search(SearchKind kind, std::uint64_t m, const SearchOptions& options) {
  switch (kind) {
    case SearchKind::additive: return min_additive_basis(m, options);
    case SearchKind::subtractive: return min_difference_basis(m, options);
    case SearchKind::ruzsa: return ruzsa_number(m, options);
  }
  throw std::logic_error("bad search kind");
}

SearchResult naive_oracle(std::uint64_t m, SearchKind kind) {
  if (m == 0) throw PreconditionViolated("naive_oracle: modulus must be positive");
  if (m > kNaiveOracleLimit) {
    throw LimitExceeded("naive oracle: m=" + std::to_string(m) + " above limit " + std::to_string(kNaiveOracleLimit));
  }
  const Mask end = Mask{1} << m;
  std::uint64_t best = ~std::uint64_t{0};
  Mask best_set = 0;
  for (Mask set = 1; set < end; ++set) {
    const auto counts = naive_counts(set, m, kind != SearchKind::subtractive);
    std::uint32_t lo = counts[0], hi = counts[0];
    for (std::uint64_t n = 1; n < m; ++n) {
      lo = std::min(lo, counts[n]);
      hi = std::max(hi, counts[n]);
    }
    if (lo == 0) continue;
    const std::uint64_t score = kind == SearchKind::ruzsa ? hi : static_cast<std::uint64_t>(std::popcount(set));
    if (score < best) {
      best = score;
      best_set = set;
    }
  }
  if (kind == SearchKind::ruzsa) {
    return SearchResult{m, kind, best, mask_to_set(best_set, m), Rational(static_cast<std::int64_t>(best)), end - 1};
  }
  return size_result(kind, m, best, best_set, end - 1);
}

std::vector<std::uint64_t> perfect_difference_scan(std::uint64_t max_m, const SearchOptions& options) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 1; m <= max_m; ++m) {
    const std::uint64_t k = min_difference_basis(m, options).optimum;
    if (k * (k - 1) + 1 == m) out.push_back(m);
  }
  return out;
}

}  // namespace zbases
