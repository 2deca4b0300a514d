#pragma once

// Rational torsion via Nagell-Lutz: torsion points are integral and either
// have y = 0 or y^2 | disc(x^3 + a x^2 + b x) = b^2 (a^2 - 4b). Candidates
// are order-tested by exact multiplication up to Mazur's bound of 12.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "curve.hpp"

namespace isodescent {

struct TorsionStructure {
  enum class Kind { cyclic, product };  // Z/n or Z/2 x Z/2n
  Kind kind = Kind::cyclic;
  unsigned n = 1;
  std::vector<Point> generators;
  std::vector<Point> points;  // every torsion point, infinity first

  unsigned order() const { return kind == Kind::cyclic ? n : 4 * n; }

  std::string name() const
  {
    if (kind == Kind::cyclic) return n == 1 ? "0" : "Z/" + std::to_string(n);
    return "Z/2 x Z/" + std::to_string(2 * n);
  }

  friend bool operator==(const TorsionStructure&, const TorsionStructure&) = default;
};

inline bool in_mazur_list(TorsionStructure::Kind kind, unsigned n)
{
  if (kind == TorsionStructure::Kind::cyclic) return (n >= 1 && n <= 10) || n == 12;
  return n >= 1 && n <= 4;
}

namespace detail {

inline std::map<std::uint64_t, unsigned> merge(const std::vector<PrimePower>& x, const std::vector<PrimePower>& y,
                                               unsigned scale_x, unsigned scale_y)
{
  std::map<std::uint64_t, unsigned> out;
  for (const auto& pp : x) out[pp.prime] += scale_x * pp.exponent;
  for (const auto& pp : y) out[pp.prime] += scale_y * pp.exponent;
  return out;
}

inline std::vector<Integer> divisors(const std::map<std::uint64_t, unsigned>& factored)
{
  std::vector<Integer> out{1};
  for (const auto& [p, k] : factored) {
    std::size_t n = out.size();
    Integer f = 1;
    for (unsigned i = 1; i <= k; ++i) {
      f *= p;
      for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] * f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Order of p if it is at most 12 and all multiples stay integral, else 0.
inline unsigned small_order(const Curve& c, const Point& p)
{
  Point q = p;
  for (unsigned k = 1; k <= 12; ++k) {
    if (q.is_infinity()) return k;
    if (!q.is_integral()) return 0;
    q = add_unchecked(c, q, p);
  }
  return 0;
}

}  // namespace detail

/// Integral points allowed by Nagell-Lutz: y = 0 roots, and (X, +-Y) with
/// Y^2 | b^2 (a^2 - 4b) and X an integer root of x^3 + a x^2 + b x - Y^2.
inline std::vector<Point> torsion_candidates(const Curve& c)
{
  std::vector<Point> out;
  // y = 0: x = 0 and integer roots of x^2 + a x + b.
  out.emplace_back(Rational(0), Rational(0));
  const Integer disc = c.a() * c.a() - 4 * c.b();
  if (is_perfect_square(disc)) {
    Integer s = integer_sqrt(disc);
    for (const Integer& num : {Integer(-c.a() - s), Integer(-c.a() + s)}) {
      if (num % 2 != 0) continue;
      Point p(Rational(num / 2), Rational(0));
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  }
  // y != 0: Y^2 | D where D = b^2 (a^2 - 4b).
  auto fb = factorize(c.b()), fd = factorize(disc);
  auto exponents = detail::merge(fb, fd, 2, 1);
  std::map<std::uint64_t, unsigned> half;
  for (const auto& [p, k] : exponents)
    if (k / 2) half[p] = k / 2;
  for (const auto& y : detail::divisors(half)) {
    // X divides Y^2.
    std::map<std::uint64_t, unsigned> y2;
    Integer rest = y;
    for (const auto& [p, k] : half) {
      unsigned e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (e) y2[p] = 2 * e;
    }
    const Integer target = y * y;
    for (const auto& d : detail::divisors(y2)) {
      for (const Integer& x : {d, Integer(-d)}) {
        if (x * (x * x + c.a() * x + c.b()) == target) {
          out.emplace_back(Rational(x), Rational(y));
          out.emplace_back(Rational(x), Rational(-y));
        }
      }
    }
  }
  return out;
}

/// The rational torsion subgroup, classified against Mazur's list.
inline TorsionStructure torsion_subgroup(const Curve& c)
{
  std::vector<std::pair<Point, unsigned>> torsion{{Point::infinity(), 1}};
  for (const auto& p : torsion_candidates(c))
    if (unsigned k = detail::small_order(c, p)) torsion.emplace_back(p, k);

  TorsionStructure s;
  const unsigned size = static_cast<unsigned>(torsion.size());
  const auto two_torsion = std::count_if(torsion.begin(), torsion.end(), [](const auto& t) { return t.second == 2; });
  auto max_it = std::max_element(torsion.begin(), torsion.end(),
                                 [](const auto& x, const auto& y) { return x.second < y.second; });
  if (two_torsion == 3) {
    s.kind = TorsionStructure::Kind::product;
    s.n = size / 4;
    s.generators.push_back(max_it->first);
    // A 2-torsion point outside <generator>.
    Point half = scalar_mul(c, Integer(max_it->second / 2), max_it->first);
    for (const auto& [p, k] : torsion) {
      if (k == 2 && p != half) {
        s.generators.push_back(p);
        break;
      }
    }
  } else {
    s.kind = TorsionStructure::Kind::cyclic;
    s.n = size;
    if (size > 1) s.generators.push_back(max_it->first);
  }
  for (const auto& t : torsion) s.points.push_back(t.first);

  if (!in_mazur_list(s.kind, s.n) || s.order() != size)
    throw std::logic_error("torsion classification failed: " + std::to_string(size) + " points, shape " + s.name());
  // The generators must produce exactly the points found.
  std::vector<Point> generated{Point::infinity()};
  for (const auto& g : s.generators) {
    std::vector<Point> next;
    for (const auto& base : generated) {
      Point q = base;
      do {
        if (std::find(next.begin(), next.end(), q) == next.end()) next.push_back(q);
        q = detail::add_unchecked(c, q, g);
      } while (q != base);
    }
    generated = std::move(next);
  }
  if (generated.size() != size)
    throw std::logic_error("torsion generators span " + std::to_string(generated.size()) + " points, expected " +
                           std::to_string(size));
  return s;
}

}  // namespace isodescent
