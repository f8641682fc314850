#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zbases/rational.hpp"

namespace zbases {

/// Deterministic for every 64-bit input (Miller-Rabin on the first twelve
/// prime bases).
bool is_prime(std::uint64_t n);

/// One endpoint of a PrimeWindow: the nonnegative root of an integer
/// polynomial f(x) = a x^2 + b x + c that is strictly increasing on x >= 0.
/// Integer membership is decided by the sign of f(n), never by the root.
struct WindowBound {
  __int128 a = 0;
  __int128 b = 0;
  __int128 c = 0;

  __int128 eval(std::uint64_t n) const;
  /// Floating approximation of the root, for display and scan ranges only.
  double approx() const;

  static WindowBound at(const Rational& value);
};

/// Open interval (lo, hi): n is inside iff f_lo(n) > 0 and f_hi(n) < 0.
class PrimeWindow {
 public:
  /// Throws std::invalid_argument unless lo < hi.
  PrimeWindow(WindowBound lo, WindowBound hi);
  static PrimeWindow between(const Rational& lo, const Rational& hi);

  const WindowBound& lo() const { return lo_; }
  const WindowBound& hi() const { return hi_; }
  bool contains(std::uint64_t n) const;

  /// "(158.11…, 162.22…)"
  std::string describe() const;

 private:
  WindowBound lo_;
  WindowBound hi_;
};

/// All primes strictly inside the window, ascending.
std::vector<std::uint64_t> primes_in(const PrimeWindow& w);

/// Exact pi(x) by sieve; x <= 1e8.
std::uint64_t count_primes_up_to(std::uint64_t x);

/// Distinct prime factors by trial division, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace zbases
