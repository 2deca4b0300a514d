#pragma once

// Exact group law on y^2 = x^3 + a x^2 + b x over Q, the 2-isogenous curve
// and the degree-2 isogeny between them.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "arith.hpp"

namespace isodescent {

using Rational = boost::multiprecision::cpp_rational;

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

inline std::string to_string(const Rational& r)
{
  if (is_integral(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(const std::string& text)
{
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(parse_integer(text.substr(0, slash)), den);
}

/// y^2 = x^3 + a x^2 + b x with b^2 (a^2 - 4b) != 0.
class Curve {
 public:
  Curve(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b))
  {
    if (b_ == 0 || a_ * a_ - 4 * b_ == 0)
      throw std::invalid_argument("singular curve: a=" + a_.str() + ", b=" + b_.str() + " gives b^2(a^2-4b) = 0");
  }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }

  /// b^2 (a^2 - 4b): discriminant of the cubic x^3 + a x^2 + b x.
  Integer discriminant() const { return b_ * b_ * (a_ * a_ - 4 * b_); }

  Rational rhs(const Rational& x) const { return x * (x * x + Rational(a_) * x + Rational(b_)); }

  friend bool operator==(const Curve&, const Curve&) = default;

 private:
  Integer a_;
  Integer b_;
};

/// A rational point; default-constructed is the point at infinity.
class Point {
 public:
  Point() = default;
  Point(Rational x, Rational y) : xy_(std::in_place, std::move(x), std::move(y)) {}

  static Point infinity() { return {}; }

  bool is_infinity() const { return !xy_.has_value(); }
  const Rational& x() const { return xy_->first; }
  const Rational& y() const { return xy_->second; }

  bool is_integral() const { return is_infinity() || (isodescent::is_integral(x()) && isodescent::is_integral(y())); }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::optional<std::pair<Rational, Rational>> xy_;
};

inline std::string to_string(const Point& p)
{
  if (p.is_infinity()) return "O";
  return "(" + to_string(p.x()) + ", " + to_string(p.y()) + ")";
}

inline bool on_curve(const Curve& c, const Point& p)
{
  return p.is_infinity() || p.y() * p.y() == c.rhs(p.x());
}

namespace detail {

inline void require_on_curve(const Curve& c, const Point& p)
{
  if (!on_curve(c, p)) throw std::invalid_argument("point " + to_string(p) + " is not on the curve");
}

inline Point add_unchecked(const Curve& c, const Point& p, const Point& q)
{
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  Rational lambda;
  if (p.x() == q.x()) {
    if (p.y() != q.y() || p.y() == 0) return Point::infinity();
    lambda = (3 * p.x() * p.x() + 2 * Rational(c.a()) * p.x() + Rational(c.b())) / (2 * p.y());
  } else {
    lambda = (q.y() - p.y()) / (q.x() - p.x());
  }
  Rational x3 = lambda * lambda - Rational(c.a()) - p.x() - q.x();
  Rational y3 = lambda * (p.x() - x3) - p.y();
  Point r(std::move(x3), std::move(y3));
#ifdef ISODESCENT_CHECKED
  if (!on_curve(c, r)) throw std::logic_error("group law left the curve at " + to_string(r));
#endif
  return r;
}

}  // namespace detail

inline Point negate(const Curve& c, const Point& p)
{
  detail::require_on_curve(c, p);
  if (p.is_infinity()) return p;
  return Point(p.x(), -p.y());
}

/// Chord-tangent addition with the point at infinity as identity.
inline Point add(const Curve& c, const Point& p, const Point& q)
{
  detail::require_on_curve(c, p);
  detail::require_on_curve(c, q);
  return detail::add_unchecked(c, p, q);
}

/// n * p by double-and-add; negative n negates first.
inline Point scalar_mul(const Curve& c, const Integer& n, const Point& p)
{
  detail::require_on_curve(c, p);
  Point base = n < 0 ? Point(p.is_infinity() ? p : Point(p.x(), -p.y())) : p;
  Integer k = abs(n);
  Point acc;
  while (k != 0) {
    if ((k & 1) != 0) acc = detail::add_unchecked(c, acc, base);
    k >>= 1;
    if (k != 0) base = detail::add_unchecked(c, base, base);
  }
  return acc;
}

/// y^2 = x^3 - 2a x^2 + (a^2 - 4b) x.
inline Curve isogenous_curve(const Curve& c) { return Curve(-2 * c.a(), c.a() * c.a() - 4 * c.b()); }

/// phi(x, y) = (y^2/x^2, y(x^2 - b)/x^2); the kernel {O, (0,0)} maps to O.
inline Point isogeny_apply(const Curve& c, const Point& p)
{
  detail::require_on_curve(c, p);
  if (p.is_infinity() || p.x() == 0) return Point::infinity();
  Rational x2 = p.x() * p.x();
  return Point(p.y() * p.y() / x2, p.y() * (x2 - Rational(c.b())) / x2);
}

}  // namespace isodescent
