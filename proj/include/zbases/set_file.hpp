#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "zbases/residue_set.hpp"

namespace zbases {

// Text format:
//   m=<modulus>
//   <comma-separated strictly ascending representatives>

std::string format_set_file(const ResidueSet& a);

/// Throws ParseError on any deviation from the format (including
/// out-of-range, duplicate or unsorted members).
ResidueSet parse_set_file(std::string_view text);

ResidueSet read_set_file(const std::filesystem::path& path);
void write_set_file(const std::filesystem::path& path, const ResidueSet& a);

}  // namespace zbases
