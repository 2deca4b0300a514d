#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include <isodescent/curve.hpp>
#include <isodescent/descent.hpp>

using namespace isodescent;

namespace {

Point pt(long long x, long long y) { return Point(Rational(x), Rational(y)); }

// {k P + e T : -2 <= k <= 2, e in {0, 1}}.
std::vector<Point> samples(const Curve& c, const Point& p, const Point& t)
{
  std::vector<Point> out;
  for (int k = -2; k <= 2; ++k) {
    Point kp = scalar_mul(c, Integer(k), p);
    out.push_back(kp);
    out.push_back(add(c, kp, t));
  }
  return out;
}

// The dual of the dual isogeny lands on (4a, 16b); rescale back to (a, b).
Point unscale(const Point& p)
{
  if (p.is_infinity()) return p;
  return Point(p.x() / 4, p.y() / 8);
}

struct Sample {
  Curve curve;
  std::vector<Point> points;
};

std::vector<Sample> corpus()
{
  Curve c4(0, 4);
  Curve e(0, -60455);  // (113, 107)
  Curve ebar = isogenous_curve(e);
  std::vector<Sample> out;
  out.push_back({c4, {Point::infinity(), pt(0, 0), pt(2, 4), pt(2, -4)}});
  out.push_back({e, samples(e, pt(324, 3798), pt(0, 0))});
  out.push_back({ebar, samples(ebar, pt(226, 8136), pt(0, 0))});
  return out;
}

}  // namespace

TEST(Curve, RejectsSingular)
{
  EXPECT_THROW(Curve(0, 0), std::invalid_argument);
  EXPECT_THROW(Curve(2, 1), std::invalid_argument);   // a^2 = 4b
  EXPECT_THROW(Curve(-4, 4), std::invalid_argument);
  EXPECT_NO_THROW(Curve(0, -2555));
  EXPECT_EQ(Curve(0, -2555).discriminant(), Integer(2555) * 2555 * 4 * 2555);
}

TEST(Curve, OnCurve)
{
  Curve c(0, 4);
  EXPECT_TRUE(on_curve(c, pt(2, 4)));
  EXPECT_TRUE(on_curve(c, Point::infinity()));
  EXPECT_FALSE(on_curve(c, pt(2, 5)));
  EXPECT_THROW(add(c, pt(2, 5), pt(0, 0)), std::invalid_argument);
  EXPECT_TRUE(on_curve(Curve(0, -60455), pt(324, 3798)));
  EXPECT_TRUE(on_curve(Curve(0, 241820), pt(226, 8136)));
}

TEST(GroupLaw, IdentityInverseClosure)
{
  for (const auto& s : corpus()) {
    for (const auto& p : s.points) {
      ASSERT_TRUE(on_curve(s.curve, p)) << to_string(p);
      EXPECT_EQ(add(s.curve, p, Point::infinity()), p);
      EXPECT_EQ(add(s.curve, Point::infinity(), p), p);
      EXPECT_TRUE(add(s.curve, p, negate(s.curve, p)).is_infinity());
      for (const auto& q : s.points) {
        Point r = add(s.curve, p, q);
        ASSERT_TRUE(on_curve(s.curve, r));
        ASSERT_EQ(r, add(s.curve, q, p));
      }
    }
  }
}

TEST(GroupLaw, AssociativityOnAtLeast1000Triples)
{
  std::size_t triples = 0;
  for (const auto& s : corpus()) {
    const Curve& c = s.curve;
    for (const auto& p : s.points)
      for (const auto& q : s.points)
        for (const auto& r : s.points) {
          ASSERT_EQ(add(c, add(c, p, q), r), add(c, p, add(c, q, r)))
              << to_string(p) << " " << to_string(q) << " " << to_string(r);
          ++triples;
        }
  }
  EXPECT_GE(triples, 1000u);
}

TEST(GroupLaw, ScalarMultiplication)
{
  Curve c(0, 4);
  EXPECT_EQ(scalar_mul(c, Integer(2), pt(2, 4)), pt(0, 0));
  EXPECT_TRUE(scalar_mul(c, Integer(4), pt(2, 4)).is_infinity());
  EXPECT_EQ(scalar_mul(c, Integer(-1), pt(2, 4)), pt(2, -4));
  EXPECT_EQ(scalar_mul(c, Integer(3), pt(2, 4)), pt(2, -4));
  EXPECT_TRUE(scalar_mul(c, Integer(0), pt(2, 4)).is_infinity());

  Curve e(0, -60455);
  Point p = pt(324, 3798);
  Point acc;
  for (int k = 0; k <= 7; ++k) {
    EXPECT_EQ(scalar_mul(e, Integer(k), p), acc) << k;
    EXPECT_EQ(scalar_mul(e, Integer(-k), p), negate(e, acc)) << k;
    acc = add(e, acc, p);
  }
  // Points of infinite order have non-integral multiples.
  EXPECT_FALSE(scalar_mul(e, Integer(2), p).is_integral());
}

TEST(Isogeny, TargetCurve)
{
  EXPECT_EQ(isogenous_curve(Curve(0, -2555)), Curve(0, 10220));
  EXPECT_EQ(isogenous_curve(Curve(3, 1)), Curve(-6, 5));
}

TEST(Isogeny, HomomorphismOnSamples)
{
  for (const auto& s : corpus()) {
    const Curve& c = s.curve;
    const Curve target = isogenous_curve(c);
    for (const auto& p : s.points) {
      Point fp = isogeny_apply(c, p);
      ASSERT_TRUE(on_curve(target, fp)) << to_string(p);
      for (const auto& q : s.points)
        ASSERT_EQ(isogeny_apply(c, add(c, p, q)), add(target, fp, isogeny_apply(c, q)));
    }
  }
}

TEST(Isogeny, KernelAndDual)
{
  for (const auto& s : corpus()) {
    const Curve& c = s.curve;
    const Curve target = isogenous_curve(c);
    EXPECT_TRUE(isogeny_apply(c, pt(0, 0)).is_infinity());
    EXPECT_TRUE(isogeny_apply(c, Point::infinity()).is_infinity());
    for (const auto& p : s.points) {
      Point back = unscale(isogeny_apply(target, isogeny_apply(c, p)));
      ASSERT_EQ(back, scalar_mul(c, Integer(2), p)) << to_string(p);
    }
  }
}

TEST(Rational, ParseAndPrint)
{
  EXPECT_EQ(to_string(Rational(9, 4)), "9/4");
  EXPECT_EQ(to_string(Rational(-3)), "-3");
  EXPECT_EQ(parse_rational("-9/4"), Rational(-9, 4));
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_EQ(to_string(Point::infinity()), "O");
  EXPECT_EQ(to_string(pt(2, -4)), "(2, -4)");
}
