#include "zbases/primes.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace zbases {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  // Bases 2..37 are a witness set for all n < 3.3e24.
  static constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (const auto q : kBases) {
    if (n % q == 0) return n == q;
  }
  const int s = std::countr_zero(n - 1);
  const std::uint64_t d = (n - 1) >> s;
  for (const auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

__int128 WindowBound::eval(std::uint64_t n) const {
  const auto x = static_cast<__int128>(n);
  return (a * x + b) * x + c;
}

double WindowBound::approx() const {
  const auto fa = static_cast<double>(a);
  const auto fb = static_cast<double>(b);
  const auto fc = static_cast<double>(c);
  if (a == 0) return -fc / fb;
  return (-fb + std::sqrt(fb * fb - 4 * fa * fc)) / (2 * fa);
}

WindowBound WindowBound::at(const Rational& value) {
  // den * x - num
  return WindowBound{0, value.denominator(), -static_cast<__int128>(value.numerator())};
}

PrimeWindow::PrimeWindow(WindowBound lo, WindowBound hi) : lo_(lo), hi_(hi) {
  if (!(lo_.approx() < hi_.approx())) throw std::invalid_argument("prime window requires lo < hi");
}

PrimeWindow PrimeWindow::between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("prime window requires lo < hi");
  return PrimeWindow(WindowBound::at(lo), WindowBound::at(hi));
}

bool PrimeWindow::contains(std::uint64_t n) const { return lo_.eval(n) > 0 && hi_.eval(n) < 0; }

std::string PrimeWindow::describe() const {
  auto fmt = [](const WindowBound& bound) {
    // Exact integer endpoints print bare.
    const double v = bound.approx();
    const double r = std::round(v);
    if (r >= 0 && bound.eval(static_cast<std::uint64_t>(r)) == 0) return std::to_string(static_cast<std::uint64_t>(r));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f…", std::floor(v * 100) / 100);
    return std::string(buf);
  };
  return "(" + fmt(lo_) + ", " + fmt(hi_) + ")";
}

std::vector<std::uint64_t> primes_in(const PrimeWindow& w) {
  std::vector<std::uint64_t> out;
  const double lo = std::max(0.0, std::floor(w.lo().approx()) - 2);
  const double hi = std::ceil(w.hi().approx()) + 2;
  for (auto n = static_cast<std::uint64_t>(lo); static_cast<double>(n) <= hi; ++n) {
    if (w.contains(n) && is_prime(n)) out.push_back(n);
  }
  return out;
}

std::uint64_t count_primes_up_to(std::uint64_t x) {
  if (x > 100'000'000) throw std::invalid_argument("count_primes_up_to: x above 1e8");
  if (x < 2) return 0;
  // composite[i] refers to the odd number 2i + 1.
  const std::uint64_t half = (x + 1) / 2;
  std::vector<bool> composite(half, false);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= x; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = p * p / 2; j < half; j += p) composite[j] = true;
  }
  std::uint64_t count = 1;  // 2
  for (std::uint64_t i = 1; i < half; ++i) count += !composite[i];
  return count;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace zbases
