#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace zbases {

using Rational = boost::rational<std::int64_t>;

/// Reduces num/den computed in 128 bits; throws std::overflow_error if the
/// reduced fraction does not fit in 64 bits.
Rational make_rational(__int128 num, __int128 den);

/// Parses "N/D" or a bare integer "N". Throws ParseError.
Rational parse_rational(std::string_view text);

/// Parses a decimal literal such as "512.99" or "-3" exactly.
Rational parse_decimal(std::string_view text);

/// "num/den" (den always printed, also for integers).
std::string to_string(const Rational& q);

}  // namespace zbases
