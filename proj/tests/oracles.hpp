#pragma once

// Reference implementations used only to cross-check the library. They are
// written for clarity and share no code with it.

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include <isodescent/arith.hpp>
#include <isodescent/curve.hpp>
#include <isodescent/descent.hpp>

namespace oracle {

using isodescent::Integer;

inline std::int64_t residue(const Integer& v, std::int64_t m)
{
  Integer r = v % m;
  if (r < 0) r += m;
  return r.convert_to<std::int64_t>();
}

inline bool coprime_mod(std::int64_t x, std::int64_t y, std::int64_t m)
{
  return std::gcd(std::gcd(x, y), m) == 1;
}

/// True iff no (N, M, e) mod m satisfies the quartic together with the
/// coprimality conditions, each read modulo the primes of m.
inline bool obstructed(const isodescent::Torsor& t, std::int64_t m)
{
  const std::int64_t b1 = residue(t.b1, m), a = residue(t.a, m), b2 = residue(t.b2, m);
  std::vector<std::vector<std::int64_t>> roots(m);
  for (std::int64_t n = 0; n < m; ++n) roots[n * n % m].push_back(n);
  for (std::int64_t M = 0; M < m; ++M) {
    if (!coprime_mod(b2, M, m)) continue;
    for (std::int64_t e = 0; e < m; ++e) {
      if (!coprime_mod(M, e, m) || !coprime_mod(b1, e, m)) continue;
      const std::int64_t M2 = M * M % m, e2 = e * e % m;
      const std::int64_t r = (b1 * (M2 * M2 % m) + a * (M2 * e2 % m) + b2 * (e2 * e2 % m)) % m;
      for (std::int64_t N : roots[r])
        if (coprime_mod(N, e, m) && coprime_mod(N, M, m)) return false;
    }
  }
  return true;
}

/// Smallest (M, e) in lexicographic order with 1 <= M, e <= bound giving an
/// admissible witness, by direct evaluation.
inline std::optional<isodescent::TorsorWitness> witness(const isodescent::Torsor& t, std::uint64_t bound)
{
  for (std::uint64_t M = 1; M <= bound; ++M)
    for (std::uint64_t e = 1; e <= bound; ++e) {
      Integer v = t.evaluate(Integer(M), Integer(e));
      if (v < 0) continue;
      Integer n = boost::multiprecision::sqrt(v);
      if (n * n != v) continue;
      isodescent::TorsorWitness w{n, Integer(M), Integer(e)};
      if (gcd(w.N, w.e) == 1 && gcd(w.M, w.e) == 1 && gcd(t.b1, w.e) == 1 && gcd(t.b2, w.M) == 1 &&
          gcd(w.M, w.N) == 1)
        return w;
    }
  return std::nullopt;
}

/// Order of p if finite and at most 12, else 0, using the checked group law.
inline unsigned order(const isodescent::Curve& c, const isodescent::Point& p)
{
  isodescent::Point q = p;
  for (unsigned k = 1; k <= 12; ++k) {
    if (q.is_infinity()) return k;
    q = isodescent::add(c, q, p);
  }
  return 0;
}

/// Torsion points among integral points with |X|, |Y| <= box, plus infinity.
inline std::vector<isodescent::Point> torsion_points(const isodescent::Curve& c, long long box)
{
  using isodescent::Point;
  using isodescent::Rational;
  std::vector<Point> out{Point::infinity()};
  for (long long x = -box; x <= box; ++x) {
    Integer X(x);
    Integer rhs = X * (X * X + c.a() * X + c.b());
    if (rhs < 0 || rhs > Integer(box) * box) continue;
    Integer y = boost::multiprecision::sqrt(rhs);
    if (y * y != rhs) continue;
    for (const Integer& Y : {y, Integer(-y)}) {
      Point p{Rational(X), Rational(Y)};
      if (order(c, p) != 0) out.push_back(p);
      if (y == 0) break;
    }
  }
  return out;
}

}  // namespace oracle
