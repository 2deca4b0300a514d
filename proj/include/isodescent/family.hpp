#pragma once

// The family E_pq: y^2 = x^3 - 5pq x. Congruence hypotheses, theorem
// checks against the descent and torsion engines, and prime-pair sweeps.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "curve.hpp"
#include "descent.hpp"
#include "parallel.hpp"
#include "torsion.hpp"

namespace isodescent {

class FamilyParams {
 public:
  /// Distinct odd primes, neither equal to 5.
  FamilyParams(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) { validate(); }

  /// p = 40k + 33, q = 40l + 27.
  static FamilyParams from_kl(const Integer& k, const Integer& l)
  {
    FamilyParams f(40 * k + 33, 40 * l + 27);
    f.k_ = k;
    f.l_ = l;
    return f;
  }

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  const std::optional<Integer>& k() const { return k_; }
  const std::optional<Integer>& l() const { return l_; }

  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;

 private:
  void validate() const
  {
    for (const Integer* v : {&p_, &q_}) {
      if (!is_prime(*v)) throw std::invalid_argument(v->str() + " is not prime");
      if (*v == 2) throw std::invalid_argument("2 is not an odd prime");
      if (*v == 5) throw std::invalid_argument("5 is excluded: b = -5pq must be squarefree");
    }
    if (p_ == q_) throw std::invalid_argument("p and q must be distinct");
  }

  Integer p_, q_;
  std::optional<Integer> k_, l_;
};

inline Curve curve_of(const FamilyParams& f) { return Curve(0, -5 * f.p() * f.q()); }

inline Integer mod_positive(const Integer& v, unsigned m)
{
  Integer r = v % m;
  return r < 0 ? r + m : r;
}

/// p = 33 and q = 7 (mod 40).
inline bool satisfies_thm11(const Integer& p, const Integer& q)
{
  for (const Integer* v : {&p, &q})
    if (!is_prime(*v)) throw std::invalid_argument(v->str() + " is not prime");
  return mod_positive(p, 40) == 33 && mod_positive(q, 40) == 7;
}

struct Thm12Condition {
  Integer p, q;
  Integer value;            // 5k + 25l + 21; 16 * value = 2p + 10q
  bool satisfied = false;
  Integer statement_value;  // 25k + 5l + 21, the transposed form
  bool statement_satisfied = false;
};

inline Thm12Condition thm12_condition(const Integer& k, const Integer& l)
{
  Thm12Condition c{40 * k + 33, 40 * l + 27};
  for (const Integer* v : {&c.p, &c.q})
    if (!is_prime(*v)) throw std::invalid_argument(v->str() + " is not prime");
  c.value = 5 * k + 25 * l + 21;
  c.satisfied = is_perfect_square(c.value);
  c.statement_value = 25 * k + 5 * l + 21;
  c.statement_satisfied = is_perfect_square(c.statement_value);
  return c;
}

enum class Outcome { match, mismatch, unresolved };

inline std::string to_string(Outcome o)
{
  switch (o) {
    case Outcome::match: return "MATCH";
    case Outcome::mismatch: return "MISMATCH";
    default: return "UNRESOLVED";
  }
}

/// Compares computed bounds with an asserted rank.
inline Outcome compare_rank(const RankBounds& b, unsigned asserted)
{
  if (asserted < b.lower || asserted > b.upper) return Outcome::mismatch;
  return b.lower == b.upper ? Outcome::match : Outcome::unresolved;
}

struct TheoremVerdict {
  std::string theorem;
  bool hypothesis_met = false;
  RankBounds rank;
  std::optional<TorsionStructure> torsion;
  bool matches_paper = false;
  Outcome outcome = Outcome::unresolved;
  std::string notes;
  friend bool operator==(const TheoremVerdict&, const TheoremVerdict&) = default;
};

/// Rank zero and torsion Z/2 for p = 33, q = 7 (mod 40).
inline TheoremVerdict verify_thm11(const Integer& p, const Integer& q, const Descent& descent,
                                   const TorsionStructure& torsion)
{
  if (!satisfies_thm11(p, q)) throw std::invalid_argument("theorem 1.1 hypothesis not met: need p = 33, q = 7 (mod 40)");
  TheoremVerdict v{"1.1", true, descent.bounds, torsion};
  const bool cyclic2 = torsion.kind == TorsionStructure::Kind::cyclic && torsion.n == 2;
  v.matches_paper = descent.bounds == RankBounds{0, 0} && cyclic2;
  v.outcome = compare_rank(descent.bounds, 0);
  if (!cyclic2) v.outcome = Outcome::mismatch;
  v.notes = "rank " + std::to_string(descent.bounds.lower) + ".." + std::to_string(descent.bounds.upper) +
            ", torsion " + torsion.name();
  return v;
}

inline TheoremVerdict verify_thm11(const Integer& p, const Integer& q, const DescentOptions& options = {})
{
  if (!satisfies_thm11(p, q)) throw std::invalid_argument("theorem 1.1 hypothesis not met: need p = 33, q = 7 (mod 40)");
  Curve c = curve_of(FamilyParams(p, q));
  return verify_thm11(p, q, descend(c, options), torsion_subgroup(c));
}

/// Rank one for p = 40k + 33, q = 40l + 27 with 5k + 25l + 21 a square.
inline TheoremVerdict verify_thm12(const Integer& k, const Integer& l, const Descent& descent)
{
  auto cond = thm12_condition(k, l);
  TheoremVerdict v{"1.2", cond.satisfied, descent.bounds};
  v.matches_paper = descent.bounds == RankBounds{1, 1};
  v.outcome = compare_rank(descent.bounds, 1);
  v.notes = "5k+25l+21 = " + cond.value.str() + (cond.satisfied ? " (square)" : " (not a square)") +
            "; 25k+5l+21 = " + cond.statement_value.str() +
            (cond.statement_satisfied ? " (square)" : " (not a square)");
  return v;
}

inline TheoremVerdict verify_thm12(const Integer& k, const Integer& l, const DescentOptions& options = {})
{
  auto f = FamilyParams::from_kl(k, l);
  return verify_thm12(k, l, descend(curve_of(f), options));
}

/// y^2 = x^3 + m a x^2 + m^2 b x.
inline Curve twist_curve(const Curve& c, const Integer& m)
{
  if (!is_squarefree(m)) throw std::invalid_argument("twist parameter " + m.str() + " must be squarefree and nonzero");
  return Curve(m * c.a(), m * m * c.b());
}

/// Rank over Q(sqrt(m)) is rank(E) + rank(E[m]); the bounds add.
inline RankBounds rank_over_quadratic(const Curve& c, const Integer& m, const Descent& own,
                                      const DescentOptions& options = {})
{
  Curve twist = twist_curve(c, m);
  RankBounds t = twist == c ? own.bounds : descend(twist, options).bounds;
  return {own.bounds.lower + t.lower, own.bounds.upper + t.upper};
}

/// For E_pq the (-1)-twist is the curve itself, so the bounds double.
inline RankBounds rank_over_Qi(const FamilyParams& f, const Descent& own)
{
  return rank_over_quadratic(curve_of(f), Integer(-1), own);
}

inline RankBounds rank_over_Qi(const FamilyParams& f, const DescentOptions& options = {})
{
  return rank_over_Qi(f, descend(curve_of(f), options));
}

enum class Theorem { thm11, thm12 };

/// Parameter pairs with p, q < limit meeting the theorem's hypothesis, in
/// ascending (p, q). For theorem 1.2, `all_congruent` drops the
/// perfect-square condition.
inline std::vector<FamilyParams> scan_pairs(Theorem theorem, const Integer& limit, bool all_congruent = false)
{
  if (limit < 1) throw std::invalid_argument("scan limit must be positive");
  std::vector<FamilyParams> out;
  if (theorem == Theorem::thm11) {
    std::vector<Integer> ps, qs;
    for (Integer v = 33; v < limit; v += 40)
      if (is_prime(v)) ps.push_back(v);
    for (Integer v = 7; v < limit; v += 40)
      if (is_prime(v)) qs.push_back(v);
    for (const auto& p : ps)
      for (const auto& q : qs) out.emplace_back(p, q);
    return out;
  }
  for (Integer k = 0; 40 * k + 33 < limit; ++k) {
    if (!is_prime(40 * k + 33)) continue;
    for (Integer l = 0; 40 * l + 27 < limit; ++l) {
      if (!is_prime(40 * l + 27)) continue;
      if (all_congruent || thm12_condition(k, l).satisfied) out.push_back(FamilyParams::from_kl(k, l));
    }
  }
  return out;
}

struct TableRow {
  std::optional<Integer> k, l;  // present for table 2
  Integer p, q;
  unsigned rank;
};

/// Pairs listed in the published tables with their asserted ranks.
inline std::vector<TableRow> published_table(int which)
{
  if (which == 1)
    return {{{}, {}, 73, 7, 0},   {{}, {}, 113, 7, 0},  {{}, {}, 73, 47, 0},
            {{}, {}, 113, 47, 0}, {{}, {}, 73, 127, 0}, {{}, {}, 113, 127, 0}};
  if (which == 2)
    return {{2, 2, 113, 107, 1}, {2, 5, 113, 227, 1}, {2, 8, 113, 347, 1},
            {7, 5, 313, 227, 1}, {10, 5, 433, 227, 1}, {7, 8, 313, 347, 1}};
  throw std::invalid_argument("no table " + std::to_string(which) + " (expected 1 or 2)");
}

}  // namespace isodescent
