#pragma once

// Machine-readable reports. Arbitrary-precision integers and rationals are
// written as decimal strings ("-2555", "9/4"); counts, bounds and moduli
// as JSON numbers. Key order is fixed, so equal reports serialize to equal
// bytes.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "descent.hpp"
#include "family.hpp"
#include "torsion.hpp"

namespace isodescent {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "1.0";

struct Report {
  std::string schema_version = isodescent::schema_version;
  std::string command;
  Json parameters = Json::object();
  Curve curve;
  Descent descent;
  std::optional<TorsionStructure> torsion;
  std::optional<RankBounds> rank_over_qi;
  std::vector<TheoremVerdict> verdicts;
  std::optional<std::int64_t> timing_ms;
  friend bool operator==(const Report&, const Report&) = default;
};

// ---------------------------------------------------------------------------
// Encoding

inline Json encode(const Integer& v) { return v.str(); }
inline Json encode(const SquareClass& c) { return c.value().str(); }
inline Json encode(const Curve& c) { return Json{{"a", c.a().str()}, {"b", c.b().str()}}; }

inline Json encode(const Point& p)
{
  if (p.is_infinity()) return Json{{"infinity", true}};
  return Json{{"x", to_string(p.x())}, {"y", to_string(p.y())}};
}

inline Json encode(const std::vector<SquareClass>& cs)
{
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(encode(c));
  return out;
}

inline Json encode(const Torsor& t) { return Json{{"b1", t.b1.str()}, {"a", t.a.str()}, {"b2", t.b2.str()}}; }

inline Json encode(const TorsorStatus& s)
{
  if (auto* v = std::get_if<Solved>(&s))
    return Json{{"state", "solved"}, {"N", v->witness.N.str()}, {"M", v->witness.M.str()}, {"e", v->witness.e.str()}};
  if (auto* v = std::get_if<Obstructed>(&s)) return Json{{"state", "obstructed"}, {"modulus", v->modulus}};
  return Json{{"state", "unknown"}, {"search_bound", std::get<Unknown>(s).search_bound}};
}

inline Json encode(const DescentReport& r)
{
  Json classes = Json::array();
  for (const auto& ca : r.classes) {
    Json torsors = Json::array();
    for (const auto& ta : ca.torsors) {
      Json t = encode(ta.torsor);
      t["status"] = encode(ta.status);
      torsors.push_back(std::move(t));
    }
    classes.push_back(Json{{"class", encode(ca.cls)}, {"status", encode(ca.status)}, {"torsors", std::move(torsors)}});
  }
  Json points = Json::array();
  for (const auto& pe : r.points) {
    Json p = encode(pe.point);
    p["class"] = encode(pe.cls);
    points.push_back(std::move(p));
  }
  return Json{{"side", to_string(r.side)},
              {"curve", encode(r.curve)},
              {"coefficient", r.coefficient.str()},
              {"middle", r.middle.str()},
              {"candidates", encode(r.candidates)},
              {"confirmed", encode(r.confirmed)},
              {"possible", encode(r.possible)},
              {"classes", std::move(classes)},
              {"points", std::move(points)}};
}

inline Json encode(const RankBounds& b) { return Json{{"lower", b.lower}, {"upper", b.upper}}; }

inline Json encode(const Descent& d)
{
  return Json{{"gamma", encode(d.gamma)}, {"gamma_bar", encode(d.gamma_bar)}, {"rank", encode(d.bounds)}};
}

inline Json encode(const TorsionStructure& t)
{
  Json gens = Json::array(), pts = Json::array();
  for (const auto& g : t.generators) gens.push_back(encode(g));
  for (const auto& p : t.points) pts.push_back(encode(p));
  return Json{{"shape", t.name()},
              {"kind", t.kind == TorsionStructure::Kind::cyclic ? "cyclic" : "product"},
              {"n", t.n},
              {"order", t.order()},
              {"generators", std::move(gens)},
              {"points", std::move(pts)}};
}

inline Json encode(const TheoremVerdict& v)
{
  Json j{{"theorem", v.theorem},
         {"hypothesis_met", v.hypothesis_met},
         {"rank", encode(v.rank)},
         {"torsion", v.torsion ? Json(v.torsion->name()) : Json(nullptr)},
         {"matches_paper", v.matches_paper},
         {"outcome", to_string(v.outcome)},
         {"notes", v.notes}};
  if (v.torsion) j["torsion_detail"] = encode(*v.torsion);
  return j;
}

inline Json encode(const Report& r)
{
  Json j{{"schema_version", r.schema_version},
         {"command", r.command},
         {"parameters", r.parameters},
         {"curve", encode(r.curve)},
         {"rank", encode(r.descent.bounds)},
         {"descent", encode(r.descent)}};
  j["torsion"] = r.torsion ? encode(*r.torsion) : Json(nullptr);
  j["rank_over_qi"] = r.rank_over_qi ? encode(*r.rank_over_qi) : Json(nullptr);
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(encode(v));
  j["verdicts"] = std::move(verdicts);
  if (r.timing_ms) j["timing"] = Json{{"elapsed_ms", *r.timing_ms}};
  return j;
}

// ---------------------------------------------------------------------------
// Decoding

inline Integer decode_integer(const Json& j)
{
  if (!j.is_string()) throw std::invalid_argument("expected a decimal string, got " + j.dump());
  return parse_integer(j.get<std::string>());
}

inline SquareClass decode_class(const Json& j) { return SquareClass::from_squarefree(decode_integer(j)); }

inline std::vector<SquareClass> decode_classes(const Json& j)
{
  std::vector<SquareClass> out;
  for (const auto& v : j) out.push_back(decode_class(v));
  return out;
}

inline Curve decode_curve(const Json& j) { return Curve(decode_integer(j.at("a")), decode_integer(j.at("b"))); }

inline Point decode_point(const Json& j)
{
  if (j.contains("infinity")) return Point::infinity();
  return Point(parse_rational(j.at("x").get<std::string>()), parse_rational(j.at("y").get<std::string>()));
}

inline Torsor decode_torsor(const Json& j)
{
  return {decode_integer(j.at("b1")), decode_integer(j.at("a")), decode_integer(j.at("b2"))};
}

inline TorsorStatus decode_status(const Json& j)
{
  const auto state = j.at("state").get<std::string>();
  if (state == "solved")
    return Solved{{decode_integer(j.at("N")), decode_integer(j.at("M")), decode_integer(j.at("e"))}};
  if (state == "obstructed") return Obstructed{j.at("modulus").get<std::uint64_t>()};
  if (state == "unknown") return Unknown{j.at("search_bound").get<std::uint64_t>()};
  throw std::invalid_argument("unknown torsor state '" + state + "'");
}

inline Side decode_side(const Json& j)
{
  const auto s = j.get<std::string>();
  if (s == "gamma") return Side::gamma;
  if (s == "gamma_bar") return Side::gamma_bar;
  throw std::invalid_argument("unknown side '" + s + "'");
}

inline DescentReport decode_descent_report(const Json& j)
{
  DescentReport r{decode_curve(j.at("curve")), decode_side(j.at("side"))};
  r.coefficient = decode_integer(j.at("coefficient"));
  r.middle = decode_integer(j.at("middle"));
  r.candidates = decode_classes(j.at("candidates"));
  r.confirmed = decode_classes(j.at("confirmed"));
  r.possible = decode_classes(j.at("possible"));
  for (const auto& c : j.at("classes")) {
    ClassAnalysis ca{decode_class(c.at("class")), decode_status(c.at("status")), {}};
    for (const auto& t : c.at("torsors")) ca.torsors.push_back({decode_torsor(t), decode_status(t.at("status"))});
    r.classes.push_back(std::move(ca));
  }
  for (const auto& p : j.at("points")) r.points.push_back({decode_class(p.at("class")), decode_point(p)});
  return r;
}

inline RankBounds decode_bounds(const Json& j) { return {j.at("lower").get<unsigned>(), j.at("upper").get<unsigned>()}; }

inline Descent decode_descent(const Json& j)
{
  return {decode_descent_report(j.at("gamma")), decode_descent_report(j.at("gamma_bar")), decode_bounds(j.at("rank"))};
}

inline TorsionStructure decode_torsion(const Json& j)
{
  TorsionStructure t;
  t.kind = j.at("kind").get<std::string>() == "cyclic" ? TorsionStructure::Kind::cyclic
                                                         : TorsionStructure::Kind::product;
  t.n = j.at("n").get<unsigned>();
  for (const auto& g : j.at("generators")) t.generators.push_back(decode_point(g));
  for (const auto& p : j.at("points")) t.points.push_back(decode_point(p));
  return t;
}

inline Outcome decode_outcome(const Json& j)
{
  const auto s = j.get<std::string>();
  if (s == "MATCH") return Outcome::match;
  if (s == "MISMATCH") return Outcome::mismatch;
  if (s == "UNRESOLVED") return Outcome::unresolved;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

inline TheoremVerdict decode_verdict(const Json& j)
{
  TheoremVerdict v;
  v.theorem = j.at("theorem").get<std::string>();
  v.hypothesis_met = j.at("hypothesis_met").get<bool>();
  v.rank = decode_bounds(j.at("rank"));
  if (j.contains("torsion_detail")) v.torsion = decode_torsion(j.at("torsion_detail"));
  v.matches_paper = j.at("matches_paper").get<bool>();
  v.outcome = decode_outcome(j.at("outcome"));
  v.notes = j.at("notes").get<std::string>();
  return v;
}

inline Report decode_report(const Json& j)
{
  Report r{j.at("schema_version").get<std::string>(), j.at("command").get<std::string>(), j.at("parameters"),
           decode_curve(j.at("curve")), decode_descent(j.at("descent"))};
  if (!j.at("torsion").is_null()) r.torsion = decode_torsion(j.at("torsion"));
  if (!j.at("rank_over_qi").is_null()) r.rank_over_qi = decode_bounds(j.at("rank_over_qi"));
  for (const auto& v : j.at("verdicts")) r.verdicts.push_back(decode_verdict(v));
  if (j.contains("timing")) r.timing_ms = j.at("timing").at("elapsed_ms").get<std::int64_t>();
  return r;
}

}  // namespace isodescent
