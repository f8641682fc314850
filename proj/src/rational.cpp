#include "zbases/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

#include "zbases/errors.hpp"

namespace zbases {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational make_rational(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr auto lim = std::numeric_limits<std::int64_t>::max();
  if (num > lim || num < -lim || den > lim) throw std::overflow_error("rational exceeds 64 bits");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, "rational"));
  const auto num = parse_int(text.substr(0, slash), "numerator");
  const auto den = parse_int(text.substr(slash + 1), "denominator");
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational parse_decimal(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text, "number"));
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 17 || frac.find_first_not_of("0123456789") != std::string_view::npos) {
    throw ParseError("invalid decimal '" + std::string(text) + "'");
  }
  const bool negative = !whole.empty() && whole.front() == '-';
  if (negative) whole.remove_prefix(1);
  const std::int64_t int_part = whole.empty() ? 0 : parse_int(whole, "decimal");
  if (int_part < 0) throw ParseError("invalid decimal '" + std::string(text) + "'");
  __int128 scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  __int128 num = static_cast<__int128>(int_part) * scale + parse_int(frac, "decimal");
  if (negative) num = -num;
  try {
    return make_rational(num, scale);
  } catch (const std::overflow_error&) {
    throw ParseError("decimal out of range '" + std::string(text) + "'");
  }
}

std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace zbases
