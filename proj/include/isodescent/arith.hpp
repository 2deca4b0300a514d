#pragma once

// Exact integer number theory: residue symbols, primality, integer square
// roots, factorization and the group Q*/Q*^2 of square classes.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace isodescent {

using Integer = boost::multiprecision::cpp_int;
using i128 = __int128;
using u128 = unsigned __int128;

namespace detail {

inline const Integer& two_pow_64()
{
  static const Integer value = Integer(1) << 64;
  return value;
}

inline bool fits_u64(const Integer& n) { return n >= 0 && n < two_pow_64(); }

inline std::uint64_t to_u64(const Integer& n) { return n.convert_to<std::uint64_t>(); }

inline Integer from_u128(u128 v)
{
  Integer hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | Integer(static_cast<std::uint64_t>(v));
}

inline Integer from_i128(i128 v)
{
  if (v < 0) return -from_u128(static_cast<u128>(-(v + 1)) + 1);
  return from_u128(static_cast<u128>(v));
}

// Caller guarantees |n| < 2^127.
inline i128 to_i128(const Integer& n)
{
  Integer mag = abs(n);
  u128 lo = static_cast<std::uint64_t>(mag & Integer(std::numeric_limits<std::uint64_t>::max()));
  u128 hi = static_cast<std::uint64_t>(mag >> 64);
  i128 v = static_cast<i128>((hi << 64) | lo);
  return n < 0 ? -v : v;
}

inline bool fits_i125(const Integer& n)
{
  static const Integer limit = Integer(1) << 125;
  return abs(n) < limit;
}

inline std::uint64_t mod_u64(const Integer& n, std::uint64_t m)
{
  Integer r = n % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Deterministic for every n < 2^64: the first twelve prime bases are a
// known witness set up to 3.3 * 10^24.
inline bool is_prime_u64(std::uint64_t n)
{
  if (n < 2) return false;
  static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : small) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : small) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n odd composite.
inline std::uint64_t pollard_brent(std::uint64_t n)
{
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    constexpr std::uint64_t block = 128;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += block) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& primes)
{
  if (n == 1) return;
  if (is_prime_u64(n)) {
    primes.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

inline std::uint64_t isqrt_u128(u128 n)
{
  if (n == 0) return 0;
  // Initial guess from long double, corrected to the exact floor.
  u128 x = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return static_cast<std::uint64_t>(x);
}

// Jacobi symbol (a/n) for odd n >= 1, binary algorithm.
inline int jacobi_u64(std::uint64_t a, std::uint64_t n)
{
  a %= n;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      std::uint64_t r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace detail

/// Largest integer whose primality and factorization are answered exactly.
inline const Integer& certified_limit() { return detail::two_pow_64(); }

/// Jacobi symbol (a/n); n must be odd and positive.
inline int jacobi_symbol(const Integer& a, const Integer& n)
{
  if (n <= 0 || (n & 1) == 0) throw std::invalid_argument("jacobi_symbol: modulus must be odd and positive");
  if (detail::fits_u64(n)) {
    std::uint64_t m = detail::to_u64(n);
    return detail::jacobi_u64(detail::mod_u64(a, m), m);
  }
  Integer x = a % n;
  if (x < 0) x += n;
  Integer m = n;
  int result = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      unsigned r = static_cast<unsigned>(m & 7);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if ((x & 3) == 3 && (m & 3) == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

/// Primality, exact below 2^64. Larger inputs throw std::domain_error.
inline bool is_prime(const Integer& n)
{
  if (n < 2) return false;
  if (!detail::fits_u64(n))
    throw std::domain_error("is_prime: " + n.str() + " exceeds the certified range (< 2^64)");
  return detail::is_prime_u64(detail::to_u64(n));
}

/// Legendre symbol (a/p) for an odd prime p.
inline int legendre_symbol(const Integer& a, const Integer& p)
{
  if (p <= 2 || (p & 1) == 0) throw std::invalid_argument("legendre_symbol: modulus must be an odd prime");
  if (detail::fits_u64(p) && !detail::is_prime_u64(detail::to_u64(p)))
    throw std::invalid_argument("legendre_symbol: " + p.str() + " is not prime");
  return jacobi_symbol(a, p);
}

/// floor(sqrt(n)) for n >= 0.
inline Integer integer_sqrt(const Integer& n)
{
  if (n < 0) throw std::invalid_argument("integer_sqrt: negative argument");
  if (detail::fits_i125(n)) return Integer(detail::isqrt_u128(static_cast<u128>(detail::to_i128(n))));
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Integer& n)
{
  if (n < 0) return false;
  // Squares mod 64 occupy 12 residues; cheap rejection before the root.
  static constexpr std::uint64_t mask64 = 0x0202021202030213ULL;
  if (((mask64 >> static_cast<unsigned>(n & 63)) & 1) == 0) return false;
  Integer r = integer_sqrt(n);
  return r * r == n;
}

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of |n|, ascending primes. Requires 0 < |n| < 2^64.
inline std::vector<PrimePower> factorize(const Integer& n)
{
  if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
  Integer mag = abs(n);
  if (!detail::fits_u64(mag))
    throw std::domain_error("factorize: " + n.str() + " exceeds the certified range (|n| < 2^64)");
  std::uint64_t m = detail::to_u64(mag);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  for (std::uint64_t p = 7; p <= 10000 && p * p <= m; p += 2) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  detail::factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (auto p : primes) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  }
  return out;
}

/// Distinct primes dividing n.
inline std::vector<std::uint64_t> prime_divisors(const Integer& n)
{
  std::vector<std::uint64_t> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

inline bool is_squarefree(const Integer& n)
{
  if (n == 0) return false;
  for (const auto& pp : factorize(n))
    if (pp.exponent > 1) return false;
  return true;
}

/// An element of Q*/Q*^2, held as its signed squarefree representative.
class SquareClass {
 public:
  SquareClass() = default;

  /// Class of a nonzero integer: its signed squarefree part.
  static SquareClass of(const Integer& n)
  {
    if (n == 0) throw std::invalid_argument("SquareClass: zero is not in Q*");
    Integer v = n < 0 ? -1 : 1;
    for (const auto& pp : factorize(n))
      if (pp.exponent & 1) v *= pp.prime;
    return SquareClass(std::move(v));
  }

  /// Wraps a value already known to be squarefree; validates it.
  static SquareClass from_squarefree(const Integer& n)
  {
    if (!is_squarefree(n)) throw std::invalid_argument("SquareClass: " + n.str() + " is not squarefree");
    return SquareClass(n);
  }

  const Integer& value() const { return value_; }
  bool is_one() const { return value_ == 1; }

  friend bool operator==(const SquareClass&, const SquareClass&) = default;

  // Ascending |value|, positive before negative.
  friend std::strong_ordering operator<=>(const SquareClass& x, const SquareClass& y)
  {
    Integer ax = abs(x.value_), ay = abs(y.value_);
    if (ax != ay) return ax < ay ? std::strong_ordering::less : std::strong_ordering::greater;
    if (x.value_ == y.value_) return std::strong_ordering::equal;
    return x.value_ > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  explicit SquareClass(Integer v) : value_(std::move(v)) {}
  Integer value_ = 1;

  friend SquareClass class_mul(const SquareClass&, const SquareClass&);
};

/// Product in Q*/Q*^2. Squarefree inputs need no factoring: x*y / gcd^2.
inline SquareClass class_mul(const SquareClass& x, const SquareClass& y)
{
  Integer g = gcd(abs(x.value_), abs(y.value_));
  return SquareClass(x.value_ / g * (y.value_ / g));
}

/// Every class +-d with d a product of distinct primes dividing b,
/// in canonical order. 2^(t+1) classes for t distinct primes.
inline std::vector<SquareClass> squarefree_classes(const Integer& b)
{
  if (b == 0) throw std::invalid_argument("squarefree_classes: b must be nonzero");
  auto primes = prime_divisors(b);
  std::vector<SquareClass> out;
  std::size_t count = std::size_t{1} << primes.size();
  out.reserve(2 * count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Integer d = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask >> i & 1) d *= primes[i];
    out.push_back(SquareClass::from_squarefree(d));
    out.push_back(SquareClass::from_squarefree(-d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string to_string(const Integer& n) { return n.str(); }

inline Integer parse_integer(const std::string& text)
{
  std::size_t i = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (i == text.size() || !std::all_of(text.begin() + i, text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("not a decimal integer: '" + text + "'");
  Integer v((text[0] == '+' ? text.substr(1) : text).c_str());
  return v;
}

}  // namespace isodescent
