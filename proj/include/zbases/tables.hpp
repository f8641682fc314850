#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zbases/certificate.hpp"
#include "zbases/constructions.hpp"
#include "zbases/exact_search.hpp"

namespace zbases {

// ---- pipeline scans -------------------------------------------------------

struct ScanRow {
  std::uint64_t m = 0;
  std::uint64_t p = 0;
  Rational eps;
  std::uint64_t size = 0;
  Rational mean;
  Rational bound;
  std::uint32_t min_rep = 0;
  std::uint32_t max_rep = 0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

/// Every m in [from, to] when samples is empty, otherwise `samples` draws
/// from a seeded mt19937_64 (reduced by modulo, so the sequence does not
/// depend on the standard library's distributions). Empty when from > to.
std::vector<std::uint64_t> scan_moduli(std::uint64_t from, std::uint64_t to, std::optional<std::uint64_t> samples,
                                       std::uint64_t seed);

/// Builds one certificate per modulus on `jobs` worker threads. Rows come
/// back in input order. on_certificate, if set, is called from the workers.
std::vector<ScanRow> run_scan(BasisKind kind, const std::vector<std::uint64_t>& moduli, const Rational& eps,
                              WindowPolicy policy, unsigned jobs = 0,
                              const std::function<void(const Certificate&)>& on_certificate = {});

std::string scan_csv_header();
std::string format_scan_row(const ScanRow& row);

// ---- exact-search tables --------------------------------------------------

struct SearchRow {
  std::uint64_t m = 0;
  std::optional<SearchResult> result;
  std::string error;
};

std::string search_csv_header();
std::string format_search_row(const SearchRow& row);

/// Append-only newline-delimited JSON cache of search results keyed by
/// (kind, m). First line is a schema header; a corrupt tail is truncated.
class SearchCache {
 public:
  static constexpr std::string_view kHeader = "# zbases-search-cache v1";

  /// Loads (creating if needed). Warnings about truncation go to `warnings`.
  SearchCache(std::filesystem::path path, std::vector<std::string>* warnings = nullptr);

  std::optional<SearchResult> find(SearchKind kind, std::uint64_t m) const;
  void append(const SearchResult& result);

 private:
  std::filesystem::path path_;
  std::map<std::pair<SearchKind, std::uint64_t>, SearchResult> entries_;
};

/// Runs (or replays from cache) the search for m = 1..max_m.
std::vector<SearchRow> run_search_table(SearchKind kind, std::uint64_t max_m, bool use_oracle, SearchCache* cache,
                                        const SearchOptions& options = {}, unsigned jobs = 0);

}  // namespace zbases
