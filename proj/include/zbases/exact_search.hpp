#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "zbases/rational.hpp"
#include "zbases/residue_set.hpp"

namespace zbases {

enum class SearchKind { additive, subtractive, ruzsa };

/// "ell", "g", "ruzsa": the quantity each search computes.
std::string_view to_string(SearchKind kind);
SearchKind parse_search_kind(std::string_view text);

struct SearchOptions {
  /// Largest accepted modulus; defaults to 64 (20 for ruzsa). Never above 64.
  std::optional<std::uint64_t> max_modulus;
  std::uint64_t node_budget = 2'000'000'000;
};

struct SearchResult {
  std::uint64_t m = 0;
  SearchKind kind = SearchKind::additive;
  /// Minimal basis size k, or R_m for ruzsa.
  std::uint64_t optimum = 0;
  ResidueSet witness{1};
  /// k^2/m, or R_m.
  Rational value;
  std::uint64_t nodes_explored = 0;
};

inline constexpr std::uint64_t kSearchModulusCeiling = 64;
std::uint64_t default_search_limit(SearchKind kind);

// All three searches fix 0 in A (every property searched for is translation
// invariant), add members in ascending order, and deepen the target k (or r)
// from its counting lower bound so the first hit is optimal. They throw
// LimitExceeded when m is over the limit or the node budget runs out.

SearchResult min_additive_basis(std::uint64_t m, const SearchOptions& options = {});
SearchResult min_difference_basis(std::uint64_t m, const SearchOptions& options = {});
SearchResult ruzsa_number(std::uint64_t m, const SearchOptions& options = {});
SearchResult exact_search(SearchKind kind, std::uint64_t m, const SearchOptions& options = {});

inline constexpr std::uint64_t kNaiveOracleLimit = 16;

/// Plain enumeration of all 2^m subsets, m <= 16.
SearchResult naive_oracle(std::uint64_t m, SearchKind kind);

/// Every m <= max_m whose minimal difference basis size k has k(k-1)+1 == m.
std::vector<std::uint64_t> perfect_difference_scan(std::uint64_t max_m, const SearchOptions& options = {});

}  // namespace zbases
