#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include <isodescent/commands.hpp>

using namespace isodescent;

namespace {

DescentOptions with_points()
{
  DescentOptions o;
  o.point_bound = 2000;
  return o;
}

}  // namespace

TEST(Report, RoundTripFamily)
{
  for (auto [p, q] : {std::pair{113, 107}, std::pair{73, 7}, std::pair{113, 227}, std::pair{113, 347}}) {
    Report r = family_report(FamilyParams(p, q), with_points());
    Json j = encode(r);
    EXPECT_EQ(decode_report(j), r) << p << " " << q;
    EXPECT_EQ(decode_report(Json::parse(j.dump())), r);
    EXPECT_EQ(encode(decode_report(j)).dump(), j.dump());
  }
}

TEST(Report, RoundTripArbitraryCurve)
{
  for (auto [a, b] : {std::pair{0, 4}, std::pair{0, -1}, std::pair{-3, 3}, std::pair{1, -6}, std::pair{0, -1156}}) {
    Report r = descend_report(Curve(a, b), with_points(), true);
    ASSERT_TRUE(r.timing_ms.has_value());
    Json j = encode(r);
    EXPECT_TRUE(j.contains("timing"));
    EXPECT_EQ(decode_report(j), r);
  }
}

TEST(Report, RationalPointsSurviveRoundTrip)
{
  Point p(Rational(9, 4), Rational(-21, 8));
  EXPECT_EQ(decode_point(encode(p)), p);
  EXPECT_EQ(decode_point(encode(Point::infinity())), Point::infinity());
  for (const TorsorStatus& s : {TorsorStatus(Solved{{36, 1, 1}}), TorsorStatus(Obstructed{7}), TorsorStatus(Unknown{1})})
    EXPECT_EQ(decode_status(encode(s)), s);
}

TEST(Report, SchemaAndLayout)
{
  Report r = family_report(FamilyParams(73, 7), {});
  Json j = encode(r);
  EXPECT_EQ(j.at("schema_version"), schema_version);
  EXPECT_EQ(j.begin().key(), "schema_version");
  EXPECT_FALSE(j.contains("timing"));
  EXPECT_EQ(j.at("rank").at("lower"), 0);
  EXPECT_EQ(j.at("curve").at("b"), "-2555");
  EXPECT_EQ(j.at("torsion").at("shape"), "Z/2");
  EXPECT_EQ(j.at("rank_over_qi").at("upper"), 0);
  ASSERT_EQ(j.at("verdicts").size(), 2u);
  EXPECT_EQ(j.at("verdicts")[0].at("outcome"), "MATCH");
  EXPECT_EQ(j.at("verdicts")[1].at("theorem"), "1.3");
}

TEST(Report, DecodeRejectsMalformedInput)
{
  EXPECT_THROW(decode_integer(Json(5)), std::invalid_argument);
  EXPECT_THROW(decode_integer(Json("5x")), std::invalid_argument);
  EXPECT_THROW(decode_status(Json{{"state", "maybe"}}), std::invalid_argument);
  EXPECT_THROW(decode_curve(Json{{"a", "0"}, {"b", "0"}}), std::invalid_argument);
  EXPECT_THROW(decode_class(Json("12")), std::invalid_argument);
}

TEST(Commands, OutputIsNewlineTerminatedJson)
{
  RunOptions run;
  for (const auto& result : {cmd_descend(0, -2555, run), cmd_torsion(0, 4, run), cmd_torsor({2555, 0, -1}, run),
                             cmd_family(FamilyParams(113, 107), run), cmd_table(1, run),
                             cmd_scan(Theorem::thm11, 130, false, run)}) {
    ASSERT_FALSE(result.output.empty());
    EXPECT_EQ(result.output.back(), '\n');
    EXPECT_EQ(result.output.find('\n'), 1u);  // "{\n": one document, pretty-printed
    Json j = Json::parse(result.output);
    EXPECT_EQ(j.at("schema_version"), schema_version);
    EXPECT_EQ(result.exit_code, 0);
  }
}

TEST(Commands, TableFormatsAreAligned)
{
  RunOptions run;
  run.format = Format::table;
  auto t = cmd_table(1, run);
  EXPECT_NE(t.output.find("    73     7      0      0      0  MATCH"), std::string::npos) << t.output;
  auto s = cmd_scan(Theorem::thm11, 7, false, run);
  EXPECT_NE(s.output.find("0 pairs"), std::string::npos);
}

TEST(Commands, TableTwoHasNoMismatch)
{
  RunOptions run;
  auto result = cmd_table(2, run);
  Json j = Json::parse(result.output);
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_TRUE(j.at("all_consistent").get<bool>());
  EXPECT_EQ(j.at("rows")[0].at("status"), "MATCH");
  for (const auto& row : j.at("rows")) EXPECT_NE(row.at("status"), "MISMATCH");
}

TEST(Commands, ScanIsIndependentOfJobCount)
{
  RunOptions one, many;
  many.descent.jobs = 8;
  EXPECT_EQ(cmd_scan(Theorem::thm11, 200, false, one).output, cmd_scan(Theorem::thm11, 200, false, many).output);
  EXPECT_EQ(cmd_table(2, one).output, cmd_table(2, many).output);
}

TEST(Commands, InvalidInputThrows)
{
  RunOptions run;
  EXPECT_THROW(cmd_descend(0, 0, run), std::invalid_argument);
  EXPECT_THROW(cmd_torsor({0, 0, 1}, run), std::invalid_argument);
  EXPECT_THROW(cmd_table(3, run), std::invalid_argument);
  EXPECT_THROW(cmd_scan(Theorem::thm11, 0, false, run), std::invalid_argument);
}

TEST(Commands, MismatchMapsToExitOne)
{
  TheoremVerdict ok{"1.1", true, {0, 0}};
  ok.outcome = Outcome::match;
  TheoremVerdict open = ok;
  open.outcome = Outcome::unresolved;
  TheoremVerdict bad = ok;
  bad.outcome = Outcome::mismatch;
  EXPECT_FALSE(detail::any_mismatch({ok, open}));
  EXPECT_TRUE(detail::any_mismatch({ok, bad}));
}
