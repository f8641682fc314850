#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "zbases/rational.hpp"
#include "zbases/residue_set.hpp"

namespace zbases {

/// Record of a verified basis construction and the ratio bound it meets.
struct Certificate {
  std::uint64_t m = 0;
  BasisKind kind = BasisKind::additive;
  ResidueSet set{1};
  std::uint64_t p = 0;
  Rational eps_used;
  /// Pipeline name followed by its parameters, e.g.
  /// "chen-2p2-lift nonresidue=5 base=506018 offset=493982".
  std::string construction;
  std::uint32_t min_rep = 0;
  std::uint32_t max_rep = 0;
  Rational mean;
  Rational bound;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Keys in fixed order: m, kind, set, size, p, eps_used, construction,
/// min_rep, max_rep, mean, bound. Output is byte-reproducible.
std::string certificate_to_json(const Certificate& cert);
/// Throws ParseError on malformed input or inconsistent size/mean.
Certificate certificate_from_json(std::string_view text);

void write_certificate(const std::filesystem::path& path, const Certificate& cert);
Certificate read_certificate(const std::filesystem::path& path);

}  // namespace zbases
