#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include <isodescent/family.hpp>

using namespace isodescent;

TEST(FamilyParams, Validation)
{
  EXPECT_NO_THROW(FamilyParams(73, 7));
  EXPECT_THROW(FamilyParams(9, 7), std::invalid_argument);
  EXPECT_THROW(FamilyParams(73, 5), std::invalid_argument);
  EXPECT_THROW(FamilyParams(2, 7), std::invalid_argument);
  EXPECT_THROW(FamilyParams(7, 7), std::invalid_argument);
  EXPECT_THROW(FamilyParams(-73, 7), std::invalid_argument);
  auto f = FamilyParams::from_kl(2, 2);
  EXPECT_EQ(f.p(), 113);
  EXPECT_EQ(f.q(), 107);
  EXPECT_EQ(*f.k(), 2);
  EXPECT_EQ(curve_of(f), Curve(0, -60455));
  EXPECT_THROW(FamilyParams::from_kl(1, 0), std::invalid_argument);  // 73, 27
}

TEST(FamilyParams, Thm11Hypothesis)
{
  EXPECT_TRUE(satisfies_thm11(73, 7));
  EXPECT_TRUE(satisfies_thm11(113, 127));
  EXPECT_FALSE(satisfies_thm11(113, 107));
  EXPECT_FALSE(satisfies_thm11(7, 73));
  EXPECT_THROW(satisfies_thm11(9, 7), std::invalid_argument);
  EXPECT_THROW(verify_thm11(113, 107), std::invalid_argument);
}

TEST(Thm12, ConditionValues)
{
  auto c = thm12_condition(2, 2);
  EXPECT_EQ(c.value, 81);
  EXPECT_TRUE(c.satisfied);
  auto r105 = thm12_condition(10, 5);
  EXPECT_EQ(r105.value, 196);
  EXPECT_TRUE(r105.satisfied);
  EXPECT_EQ(r105.statement_value, 296);
  EXPECT_FALSE(r105.statement_satisfied);
  auto r78 = thm12_condition(7, 8);
  EXPECT_EQ(r78.value, 256);
  EXPECT_TRUE(r78.satisfied);
  EXPECT_EQ(r78.statement_value, 236);
  EXPECT_FALSE(r78.statement_satisfied);
  EXPECT_FALSE(thm12_condition(2, 5).satisfied);  // 166
  EXPECT_THROW(thm12_condition(1, 0), std::invalid_argument);
}

TEST(Thm12, LinearIdentityOnRandomParameters)
{
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long long> dist(-1000000, 1000000);
  for (int trial = 0; trial < 100; ++trial) {
    Integer k = dist(rng), l = dist(rng);
    EXPECT_EQ(2 * (40 * k + 33) + 10 * (40 * l + 27), 16 * (5 * k + 25 * l + 21)) << k << " " << l;
  }
}

TEST(CompareRank, Outcomes)
{
  EXPECT_EQ(compare_rank({0, 0}, 0), Outcome::match);
  EXPECT_EQ(compare_rank({1, 1}, 0), Outcome::mismatch);
  EXPECT_EQ(compare_rank({0, 1}, 1), Outcome::unresolved);
  EXPECT_EQ(compare_rank({0, 1}, 2), Outcome::mismatch);
  EXPECT_EQ(to_string(Outcome::unresolved), "UNRESOLVED");
}

TEST(Verify, TableOnePair)
{
  auto v = verify_thm11(73, 7);
  EXPECT_TRUE(v.hypothesis_met);
  EXPECT_TRUE(v.matches_paper);
  EXPECT_EQ(v.outcome, Outcome::match);
  EXPECT_EQ(v.rank, (RankBounds{0, 0}));
  ASSERT_TRUE(v.torsion);
  EXPECT_EQ(v.torsion->name(), "Z/2");
}

TEST(Verify, TableTwoFirstRow)
{
  auto v = verify_thm12(2, 2);
  EXPECT_TRUE(v.hypothesis_met);
  EXPECT_TRUE(v.matches_paper);
  EXPECT_EQ(v.outcome, Outcome::match);
}

TEST(Twist, MinusOneTwistIsTheCurveItself)
{
  Curve c(0, -2555);
  EXPECT_EQ(twist_curve(c, -1), c);
  EXPECT_EQ(twist_curve(Curve(1, -6), 3), Curve(3, -54));
  EXPECT_THROW(twist_curve(c, 4), std::invalid_argument);
  EXPECT_THROW(twist_curve(c, 0), std::invalid_argument);
}

TEST(Twist, RankOverQiDoublesRationalBounds)
{
  for (const auto& f : scan_pairs(Theorem::thm12, 500, true)) {
    Descent d = descend(curve_of(f));
    RankBounds qi = rank_over_Qi(f, d);
    EXPECT_EQ(qi.lower, 2 * d.bounds.lower) << f.p() << " " << f.q();
    EXPECT_EQ(qi.upper, 2 * d.bounds.upper) << f.p() << " " << f.q();
  }
}

TEST(Twist, QuadraticFieldAddsTwistBounds)
{
  Curve c(0, -25);  // congruent number 5, rank 1
  Descent own = descend(c);
  // The 2-twist has b = -100, the curve for n = 10, rank 0.
  RankBounds r = rank_over_quadratic(c, 2, own);
  EXPECT_EQ(r, (RankBounds{1, 1}));
}

TEST(Scan, TheoremOneOnePairs)
{
  auto small = scan_pairs(Theorem::thm11, 130);
  std::vector<std::pair<int, int>> expected{{73, 7}, {73, 47}, {73, 127}, {113, 7}, {113, 47}, {113, 127}};
  ASSERT_EQ(small.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(small[i].p(), expected[i].first);
    EXPECT_EQ(small[i].q(), expected[i].second);
  }
  EXPECT_TRUE(scan_pairs(Theorem::thm11, 7).empty());
  EXPECT_EQ(scan_pairs(Theorem::thm11, 500).size(), 42u);
  EXPECT_THROW(scan_pairs(Theorem::thm11, 0), std::invalid_argument);
}

TEST(Scan, TheoremOneTwoPairs)
{
  auto pairs = scan_pairs(Theorem::thm12, 130);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].p(), 113);
  EXPECT_EQ(pairs[0].q(), 107);
  for (const auto& f : scan_pairs(Theorem::thm12, 500, true)) {
    EXPECT_EQ(mod_positive(f.p(), 40), 33);
    EXPECT_EQ(mod_positive(f.q(), 40), 27);
  }
}

TEST(Tables, PublishedRows)
{
  auto t1 = published_table(1);
  ASSERT_EQ(t1.size(), 6u);
  for (const auto& row : t1) {
    EXPECT_TRUE(satisfies_thm11(row.p, row.q));
    EXPECT_EQ(row.rank, 0u);
  }
  auto t2 = published_table(2);
  ASSERT_EQ(t2.size(), 6u);
  for (const auto& row : t2) {
    EXPECT_EQ(row.p, 40 * *row.k + 33);
    EXPECT_EQ(row.q, 40 * *row.l + 27);
    EXPECT_EQ(row.rank, 1u);
  }
  EXPECT_THROW(published_table(3), std::invalid_argument);
}

TEST(Congruences, QuadraticCharacterOfFiveBelow10000)
{
  int checked = 0;
  for (int v = 33; v < 10000; v += 40)
    if (is_prime(v)) {
      EXPECT_EQ(legendre_symbol(v, 5), -1) << v;
      EXPECT_EQ(v % 8, 1);
      EXPECT_EQ(v % 5, 3);
      ++checked;
    }
  for (int v = 7; v < 10000; v += 40)
    if (is_prime(v)) {
      EXPECT_EQ(legendre_symbol(v, 5), -1) << v;
      EXPECT_EQ(v % 8, 7);
      EXPECT_EQ(v % 5, 2);
      ++checked;
    }
  EXPECT_EQ(checked, 151);
}

TEST(Congruences, UpperBoundAtMostOneForBothBranches)
{
  auto pairs = scan_pairs(Theorem::thm11, 500);
  for (const auto& f : scan_pairs(Theorem::thm12, 500, true)) pairs.push_back(f);
  ASSERT_EQ(pairs.size(), 84u);
  for (const auto& f : pairs) {
    EXPECT_EQ(mod_positive(f.q(), 20), 7);
    EXPECT_LE(descend(curve_of(f)).bounds.upper, 1u) << f.p() << " " << f.q();
  }
}
