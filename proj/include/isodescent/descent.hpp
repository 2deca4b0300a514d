#pragma once

// Descent via 2-isogeny. For E: y^2 = x^3 + a x^2 + b x and its isogenous
// curve E', the images of the connecting maps into Q*/Q*^2 are bounded
// from below by torsor witnesses (and rational points) and from above by
// congruence obstructions. The sizes give 2^r = |img| * |img'| / 4.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "arith.hpp"
#include "curve.hpp"
#include "parallel.hpp"

namespace isodescent {

enum class Side { gamma, gamma_bar };

inline std::string to_string(Side s) { return s == Side::gamma ? "gamma" : "gamma_bar"; }

/// N^2 = b1 M^4 + a M^2 e^2 + b2 e^4.
struct Torsor {
  Integer b1;
  Integer a;
  Integer b2;

  Integer evaluate(const Integer& M, const Integer& e) const
  {
    Integer m2 = M * M, e2 = e * e;
    return b1 * m2 * m2 + a * m2 * e2 + b2 * e2 * e2;
  }

  friend bool operator==(const Torsor&, const Torsor&) = default;
};

struct TorsorWitness {
  Integer N;
  Integer M;
  Integer e;
  friend bool operator==(const TorsorWitness&, const TorsorWitness&) = default;
};

/// Equation plus gcd(N,e) = gcd(M,e) = gcd(b1,e) = gcd(b2,M) = gcd(M,N) = 1.
inline bool is_admissible(const Torsor& t, const TorsorWitness& w)
{
  if (w.M == 0 || w.e == 0) return false;
  if (w.N * w.N != t.evaluate(w.M, w.e)) return false;
  return gcd(w.N, w.e) == 1 && gcd(w.M, w.e) == 1 && gcd(t.b1, w.e) == 1 && gcd(t.b2, w.M) == 1 &&
         gcd(w.M, w.N) == 1;
}

struct Solved {
  TorsorWitness witness;
  friend bool operator==(const Solved&, const Solved&) = default;
};
struct Obstructed {
  std::uint64_t modulus;
  friend bool operator==(const Obstructed&, const Obstructed&) = default;
};
/// search_bound == 0: not searched, because the outcome cannot move either bound.
struct Unknown {
  std::uint64_t search_bound;
  friend bool operator==(const Unknown&, const Unknown&) = default;
};
using TorsorStatus = std::variant<Solved, Obstructed, Unknown>;

inline bool is_solved(const TorsorStatus& s) { return std::holds_alternative<Solved>(s); }
inline bool is_obstructed(const TorsorStatus& s) { return std::holds_alternative<Obstructed>(s); }

inline std::string to_string(const TorsorStatus& s)
{
  if (auto* v = std::get_if<Solved>(&s))
    return "Solved(" + v->witness.N.str() + ", " + v->witness.M.str() + ", " + v->witness.e.str() + ")";
  if (auto* v = std::get_if<Obstructed>(&s)) return "Obstructed(" + std::to_string(v->modulus) + ")";
  return "Unknown(" + std::to_string(std::get<Unknown>(s).search_bound) + ")";
}

struct DescentOptions {
  std::uint64_t search_bound = 1000;
  std::uint64_t point_bound = 0;  // 0 disables the rational point search
  std::uint64_t modulus_cap = 10000;
  unsigned jobs = 1;
};

// ---------------------------------------------------------------------------
// Candidate classes and local obstructions

/// Square classes that can lie in the image for a side whose torsors have
/// leading coefficient `coefficient` and middle coefficient `middle`. With
/// middle == 0 and coefficient > 0 a negative b1 forces b2 < 0 as well and
/// the quartic is negative definite, so those classes are dropped.
inline std::vector<SquareClass> candidate_classes(const Integer& coefficient, const Integer& middle)
{
  if (coefficient == 0) throw std::invalid_argument("candidate_classes: zero coefficient");
  auto all = squarefree_classes(coefficient);
  if (middle != 0 || coefficient < 0) return all;
  std::vector<SquareClass> out;
  for (auto& c : all)
    if (c.value() > 0) out.push_back(c);
  return out;
}

/// The torsors representing class d: b1 = d s^2 for every d s^2 dividing the
/// coefficient, squarefree representative first.
inline std::vector<Torsor> class_torsors(const Integer& coefficient, const Integer& middle, const SquareClass& d)
{
  std::vector<Torsor> out;
  Integer rest = coefficient / d.value();
  if (rest * d.value() != coefficient)
    throw std::invalid_argument("class " + d.value().str() + " does not divide " + coefficient.str());
  // s ranges over divisors with s^2 | rest.
  std::vector<Integer> squares{1};
  for (const auto& pp : factorize(rest)) {
    std::vector<Integer> next;
    for (const auto& s : squares) {
      Integer f = 1;
      for (unsigned k = 0; 2 * k <= pp.exponent; ++k, f *= pp.prime) next.push_back(s * f);
    }
    squares = std::move(next);
  }
  std::sort(squares.begin(), squares.end());
  for (const auto& s : squares) {
    Integer b1 = d.value() * s * s;
    out.push_back({b1, middle, coefficient / b1});
  }
  return out;
}

/// Moduli tried for local obstructions: odd primes dividing b1*b2 first
/// (ascending), then 4, 8, 16, 3, 5, 7, 11, 13; duplicates and moduli above
/// `cap` removed.
inline std::vector<std::uint64_t> obstruction_moduli(const Torsor& t, std::uint64_t cap = 10000)
{
  std::vector<std::uint64_t> bad;
  for (const Integer* v : {&t.b1, &t.b2})
    for (auto p : prime_divisors(*v))
      if (p != 2) bad.push_back(p);
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  std::vector<std::uint64_t> out;
  auto push = [&](std::uint64_t m) {
    if (m <= cap && std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  for (auto p : bad) push(p);
  for (std::uint64_t m : {4, 8, 16, 3, 5, 7, 11, 13}) push(m);
  return out;
}

/// True iff N^2 = b1 M^4 + a M^2 e^2 + b2 e^4 has no solution modulo m
/// compatible with the gcd conditions: for each prime l | m, l does not
/// divide two of N, M, e, and l | b1 => l !| e, l | b2 => l !| M.
inline bool local_obstruction(const Torsor& t, std::uint64_t m)
{
  if (m < 2) throw std::invalid_argument("local_obstruction: modulus must be at least 2");
  if (m > (1u << 20)) throw std::invalid_argument("local_obstruction: modulus too large for enumeration");
  auto primes = prime_divisors(Integer(m));
  const unsigned k = static_cast<unsigned>(primes.size());
  auto divisor_mask = [&](std::uint64_t v) {
    unsigned mask = 0;
    for (unsigned i = 0; i < k; ++i)
      if (v % primes[i] == 0) mask |= 1u << i;
    return mask;
  };
  unsigned b1_mask = divisor_mask(detail::mod_u64(t.b1, m));
  unsigned b2_mask = divisor_mask(detail::mod_u64(t.b2, m));
  // root_ok[r << k | forbidden]: some N with N^2 = r has no prime of `forbidden`.
  std::vector<std::uint8_t> root_ok(m << k, 0);
  std::vector<unsigned> masks(m);
  for (std::uint64_t v = 0; v < m; ++v) masks[v] = divisor_mask(v);
  for (std::uint64_t n = 0; n < m; ++n) {
    std::uint64_t r = n * n % m;
    for (unsigned f = 0; f < (1u << k); ++f)
      if ((f & masks[n]) == 0) root_ok[r << k | f] = 1;
  }
  const std::uint64_t b1 = detail::mod_u64(t.b1, m), a = detail::mod_u64(t.a, m), b2 = detail::mod_u64(t.b2, m);
  for (std::uint64_t M = 0; M < m; ++M) {
    unsigned dm = masks[M];
    if (dm & b2_mask) continue;
    std::uint64_t m2 = M * M % m;
    std::uint64_t lead = b1 * (m2 * m2 % m) % m;
    std::uint64_t mid = a * m2 % m;
    for (std::uint64_t e = 0; e < m; ++e) {
      unsigned de = masks[e];
      if ((dm & de) || (de & b1_mask)) continue;
      std::uint64_t e2 = e * e % m;
      std::uint64_t r = (lead + mid * e2 % m + b2 * (e2 * e2 % m) % m) % m;
      if (root_ok[r << k | (dm | de)]) return false;
    }
  }
  return true;
}

/// First modulus of obstruction_moduli that obstructs t, if any.
inline std::optional<std::uint64_t> find_obstruction(const Torsor& t, std::uint64_t cap = 10000)
{
  for (auto m : obstruction_moduli(t, cap))
    if (local_obstruction(t, m)) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Bounded searches

namespace detail {

struct SieveModulus {
  unsigned m;
  std::vector<std::uint8_t> square;
};

inline const std::vector<SieveModulus>& sieve_moduli()
{
  static const std::vector<SieveModulus> moduli = [] {
    std::vector<SieveModulus> out;
    for (unsigned m : {64u, 63u, 65u, 11u, 17u, 19u, 23u}) {
      SieveModulus s{m, std::vector<std::uint8_t>(m, 0)};
      for (unsigned i = 0; i < m; ++i) s.square[i * i % m] = 1;
      out.push_back(std::move(s));
    }
    return out;
  }();
  return moduli;
}

// Arithmetic on the survivors of the sieve: __int128 when the caller has
// bounded every intermediate below 2^125, Integer otherwise.
template <class Wide>
struct WideOps;

template <>
struct WideOps<i128> {
  static i128 from(const Integer& v) { return to_i128(v); }
  static std::uint64_t mod(i128 v, std::uint64_t m)
  {
    i128 r = v % static_cast<i128>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
  }
  static std::optional<Integer> sqrt_exact(i128 v)
  {
    if (v < 0) return std::nullopt;
    std::uint64_t s = isqrt_u128(static_cast<u128>(v));
    if (static_cast<i128>(s) * s != v) return std::nullopt;
    return Integer(s);
  }
};

template <>
struct WideOps<Integer> {
  static Integer from(const Integer& v) { return v; }
  static std::uint64_t mod(const Integer& v, std::uint64_t m) { return mod_u64(v, m); }
  static std::optional<Integer> sqrt_exact(const Integer& v)
  {
    if (v < 0) return std::nullopt;
    Integer s = integer_sqrt(v);
    if (s * s != v) return std::nullopt;
    return s;
  }
};

// Scans M in [m_lo, m_hi], e in [1, bound] in lexicographic order.
template <class Wide>
std::optional<TorsorWitness> search_rows(const Torsor& t, std::uint64_t m_lo, std::uint64_t m_hi,
                                         std::uint64_t bound, const std::atomic<std::uint64_t>* stop_above)
{
  using Ops = WideOps<Wide>;
  const Wide b1 = Ops::from(t.b1), a = Ops::from(t.a), b2 = Ops::from(t.b2);
  const auto& sieve = sieve_moduli();
  const std::size_t ns = sieve.size();
  std::vector<std::uint64_t> b1r(ns), ar(ns), b2r(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    b1r[i] = mod_u64(t.b1, sieve[i].m);
    ar[i] = mod_u64(t.a, sieve[i].m);
    b2r[i] = mod_u64(t.b2, sieve[i].m);
  }
  std::vector<std::vector<std::uint8_t>> allowed(ns);
  std::vector<unsigned> ctr(ns);
  for (std::uint64_t M = m_lo; M <= m_hi; ++M) {
    if (stop_above && M > stop_above->load(std::memory_order_relaxed)) return std::nullopt;
    if (std::gcd(Ops::mod(b2, M), M) != 1) continue;
    for (std::size_t i = 0; i < ns; ++i) {
      const unsigned m = sieve[i].m;
      const std::uint64_t mm = M % m, m2 = mm * mm % m;
      const std::uint64_t lead = b1r[i] * (m2 * m2 % m) % m, mid = ar[i] * m2 % m;
      allowed[i].assign(m, 0);
      for (std::uint64_t r = 0; r < m; ++r) {
        std::uint64_t r2 = r * r % m;
        allowed[i][r] = sieve[i].square[(lead + mid * r2 + b2r[i] * (r2 * r2 % m)) % m];
      }
      ctr[i] = 1 % m;
    }
    const Wide wm = Wide(M) * Wide(M);
    const Wide lead = b1 * wm * wm, mid = a * wm;
    for (std::uint64_t e = 1; e <= bound; ++e) {
      bool pass = true;
      for (std::size_t i = 0; i < ns; ++i) {
        pass = pass && allowed[i][ctr[i]];
        if (++ctr[i] == sieve[i].m) ctr[i] = 0;
      }
      if (!pass) continue;
      if (std::gcd(M, e) != 1 || std::gcd(Ops::mod(b1, e), e) != 1) continue;
      const Wide we = Wide(e) * Wide(e);
      const Wide value = lead + mid * we + b2 * we * we;
      auto root = Ops::sqrt_exact(value);
      if (!root) continue;
      if (gcd(*root, Integer(M)) != 1 || gcd(*root, Integer(e)) != 1) continue;
      return TorsorWitness{*root, Integer(M), Integer(e)};
    }
  }
  return std::nullopt;
}

inline bool torsor_fits_i128(const Torsor& t, std::uint64_t bound)
{
  Integer b4 = Integer(bound) * bound * bound * bound;
  return fits_i125((abs(t.b1) + abs(t.a) + abs(t.b2)) * b4 * 2);
}

}  // namespace detail

/// Smallest (M, e) in lexicographic order with 1 <= M, e <= bound giving an
/// admissible witness. The result does not depend on `jobs`.
inline std::optional<TorsorWitness> search_witness(const Torsor& t, std::uint64_t bound, unsigned jobs = 1)
{
  if (bound < 1) throw std::invalid_argument("search bound must be positive");
  const bool narrow = detail::torsor_fits_i128(t, bound);
  auto rows = [&](std::uint64_t lo, std::uint64_t hi, const std::atomic<std::uint64_t>* stop) {
    return narrow ? detail::search_rows<i128>(t, lo, hi, bound, stop)
                  : detail::search_rows<Integer>(t, lo, hi, bound, stop);
  };
  if (jobs <= 1) return rows(1, bound, nullptr);

  constexpr std::uint64_t chunk = 16;
  const std::size_t chunks = static_cast<std::size_t>((bound + chunk - 1) / chunk);
  std::atomic<std::uint64_t> best_m{bound};
  std::mutex mutex;
  std::map<std::uint64_t, TorsorWitness> found;
  parallel_for(chunks, jobs, [&](std::size_t i) {
    std::uint64_t lo = 1 + i * chunk, hi = std::min(bound, lo + chunk - 1);
    if (lo > best_m.load()) return;
    if (auto w = rows(lo, hi, &best_m)) {
      std::uint64_t m = w->M.convert_to<std::uint64_t>();
      std::lock_guard lock(mutex);
      found.emplace(m, *w);
      std::uint64_t cur = best_m.load();
      while (m < cur && !best_m.compare_exchange_weak(cur, m)) {
      }
    }
  });
  if (found.empty()) return std::nullopt;
  return found.begin()->second;
}

/// Obstruction first, then bounded witness search.
inline TorsorStatus search_torsor(const Torsor& t, std::uint64_t bound, const DescentOptions& options = {})
{
  if (bound < 1) throw std::invalid_argument("search bound must be positive");
  if (auto m = find_obstruction(t, options.modulus_cap)) return Obstructed{*m};
  if (auto w = search_witness(t, bound, options.jobs)) return Solved{*w};
  return Unknown{bound};
}

namespace detail {

template <class Wide>
std::vector<Point> points_with_denominator(const Curve& c, std::uint64_t w, std::uint64_t height)
{
  using Ops = WideOps<Wide>;
  const auto& sieve = sieve_moduli();
  const std::size_t ns = sieve.size();
  std::vector<std::vector<std::uint8_t>> allowed(ns);
  std::vector<unsigned> ctr(ns);
  const Integer w2 = Integer(w) * w, w4 = w2 * w2;
  const Integer aw2 = c.a() * w2, bw4 = c.b() * w4;
  const i128 h = static_cast<i128>(height);
  for (std::size_t i = 0; i < ns; ++i) {
    const unsigned m = sieve[i].m;
    const std::uint64_t A = mod_u64(aw2, m), B = mod_u64(bw4, m);
    allowed[i].assign(m, 0);
    for (std::uint64_t u = 0; u < m; ++u)
      allowed[i][u] = sieve[i].square[(u * ((u * u + A * u + B) % m)) % m];
    ctr[i] = static_cast<unsigned>(((-h) % m + m) % m);
  }
  const Wide waw2 = Ops::from(aw2), wbw4 = Ops::from(bw4);
  const Integer w3 = w2 * w;
  std::vector<Point> out;
  for (i128 u = -h; u <= h; ++u) {
    bool pass = true;
    for (std::size_t i = 0; i < ns; ++i) {
      pass = pass && allowed[i][ctr[i]];
      if (++ctr[i] == sieve[i].m) ctr[i] = 0;
    }
    if (!pass || u == 0) continue;
    std::uint64_t mag = static_cast<std::uint64_t>(u < 0 ? -u : u);
    if (std::gcd(mag, w) != 1) continue;
    const Wide wu = Wide(static_cast<long long>(u));
    const Wide value = wu * (wu * wu + waw2 * wu + wbw4);
    if (value == 0) continue;
    auto root = Ops::sqrt_exact(value);
    if (!root) continue;
    Rational x(Integer(static_cast<long long>(u)), w2);
    Rational y(*root, w3);
    out.emplace_back(x, y);
    out.emplace_back(x, -y);
  }
  return out;
}

}  // namespace detail

/// Non-2-torsion rational points with x = u / w^2, |u| <= height,
/// 1 <= w <= ceil(sqrt(height)), gcd(u, w) = 1. Ordered by w, then u, then
/// y > 0 before y < 0.
inline std::vector<Point> point_search(const Curve& c, std::uint64_t height, unsigned jobs = 1)
{
  if (height < 1) throw std::invalid_argument("point search bound must be positive");
  std::uint64_t w_max = integer_sqrt(Integer(height)).convert_to<std::uint64_t>();
  if (w_max * w_max < height) ++w_max;
  const Integer H(height), W2 = Integer(w_max) * w_max;
  const bool narrow =
      detail::fits_i125(2 * (H * H * H + abs(c.a()) * H * H * W2 + abs(c.b()) * H * W2 * W2));
  std::vector<std::vector<Point>> per_w(w_max);
  parallel_for(w_max, jobs, [&](std::size_t i) {
    per_w[i] = narrow ? detail::points_with_denominator<i128>(c, i + 1, height)
                      : detail::points_with_denominator<Integer>(c, i + 1, height);
  });
  std::vector<Point> out;
  for (auto& v : per_w) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// ---------------------------------------------------------------------------
// The group of candidate classes as an F2-vector space

/// Square classes supported on {-1} and the primes of a coefficient, coded
/// as bitmasks (bit 0: sign, bit i+1: i-th prime).
class ClassGroup {
 public:
  explicit ClassGroup(const Integer& coefficient) : primes_(prime_divisors(coefficient))
  {
    if (primes_.size() + 1 > 24) throw std::domain_error("too many prime factors for class enumeration");
  }

  std::size_t order() const { return std::size_t{1} << (primes_.size() + 1); }

  std::uint32_t mask(const SquareClass& c) const
  {
    std::uint32_t m = c.value() < 0 ? 1u : 0u;
    Integer rest = abs(c.value());
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (rest % primes_[i] == 0) {
        m |= 1u << (i + 1);
        rest /= primes_[i];
      }
    }
    if (rest != 1) throw std::invalid_argument("class " + c.value().str() + " is outside the candidate group");
    return m;
  }

  SquareClass element(std::uint32_t m) const
  {
    Integer v = (m & 1) ? -1 : 1;
    for (std::size_t i = 0; i < primes_.size(); ++i)
      if (m >> (i + 1) & 1) v *= primes_[i];
    return SquareClass::from_squarefree(v);
  }

 private:
  std::vector<std::uint64_t> primes_;
};

namespace detail {

inline std::vector<std::uint32_t> span(const std::vector<std::uint32_t>& generators)
{
  std::vector<std::uint32_t> h{0};
  for (auto g : generators) {
    if (std::find(h.begin(), h.end(), g) != h.end()) continue;
    std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i) h.push_back(h[i] ^ g);
  }
  return h;
}

inline bool coset_allowed(std::uint32_t x, const std::vector<std::uint32_t>& h, const std::vector<std::uint8_t>& allowed)
{
  for (auto v : h)
    if (!allowed[x ^ v]) return false;
  return true;
}

inline void grow_subgroup(const std::vector<std::uint32_t>& h, const std::vector<std::uint32_t>& candidates,
                          const std::vector<std::uint8_t>& allowed, std::vector<std::uint32_t>& best)
{
  if (h.size() > best.size()) best = h;
  if (std::bit_floor(h.size() + candidates.size()) <= best.size()) return;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::vector<std::uint32_t> next_h = h;
    for (auto v : h) next_h.push_back(v ^ candidates[i]);
    std::vector<std::uint8_t> in_h(allowed.size(), 0);
    for (auto v : next_h) in_h[v] = 1;
    std::vector<std::uint32_t> rest;
    for (std::size_t j = i + 1; j < candidates.size(); ++j)
      if (!in_h[candidates[j]] && coset_allowed(candidates[j], next_h, allowed)) rest.push_back(candidates[j]);
    grow_subgroup(next_h, rest, allowed, best);
  }
}

}  // namespace detail

/// Largest subgroup containing span(base) whose elements are all allowed.
/// Ties resolve to the first one found when candidates are tried in
/// `order`. Throws if span(base) itself hits a forbidden element.
inline std::vector<std::uint32_t> largest_subgroup(const std::vector<std::uint32_t>& base,
                                                   const std::vector<std::uint8_t>& allowed,
                                                   const std::vector<std::uint32_t>& order)
{
  auto h = detail::span(base);
  for (auto v : h)
    if (!allowed[v]) throw std::logic_error("descent inconsistency: a confirmed class is obstructed");
  std::vector<std::uint8_t> in_h(allowed.size(), 0);
  for (auto v : h) in_h[v] = 1;
  std::vector<std::uint32_t> candidates;
  for (auto x : order)
    if (allowed[x] && !in_h[x] && detail::coset_allowed(x, h, allowed)) candidates.push_back(x);
  std::vector<std::uint32_t> best;
  detail::grow_subgroup(h, candidates, allowed, best);
  return best;
}

// ---------------------------------------------------------------------------
// Descent on one side

struct TorsorAnalysis {
  Torsor torsor;
  TorsorStatus status;
  friend bool operator==(const TorsorAnalysis&, const TorsorAnalysis&) = default;
};

/// Resolution of one nontrivial candidate class: Solved if any of its
/// torsors is, Obstructed (first torsor's modulus) if all are, else Unknown.
struct ClassAnalysis {
  SquareClass cls;
  TorsorStatus status;
  std::vector<TorsorAnalysis> torsors;
  friend bool operator==(const ClassAnalysis&, const ClassAnalysis&) = default;
};

struct PointEvidence {
  SquareClass cls;
  Point point;
  friend bool operator==(const PointEvidence&, const PointEvidence&) = default;
};

struct DescentReport {
  Curve curve;  // the curve the connecting map is defined on (E or E')
  Side side = Side::gamma;
  Integer coefficient;
  Integer middle;
  std::vector<SquareClass> candidates;
  std::vector<SquareClass> confirmed;
  std::vector<SquareClass> possible;
  std::vector<ClassAnalysis> classes;  // nontrivial candidates, canonical order
  std::vector<PointEvidence> points;

  const ClassAnalysis* find(const SquareClass& c) const
  {
    for (const auto& ca : classes)
      if (ca.cls == c) return &ca;
    return nullptr;
  }

  friend bool operator==(const DescentReport&, const DescentReport&) = default;
};

namespace detail {

inline Integer class_of_x(const Rational& x) { return numerator(x) * denominator(x); }

inline TorsorStatus aggregate(const std::vector<TorsorAnalysis>& torsors)
{
  for (const auto& t : torsors)
    if (is_solved(t.status)) return t.status;
  if (std::all_of(torsors.begin(), torsors.end(), [](const auto& t) { return is_obstructed(t.status); }))
    return torsors.front().status;
  std::uint64_t bound = 0;
  for (const auto& t : torsors)
    if (auto* u = std::get_if<Unknown>(&t.status)) bound = std::max(bound, u->search_bound);
  return Unknown{bound};
}

}  // namespace detail

/// Descent images for one side of the 2-isogeny. `c` is always the
/// original curve; the gamma_bar side works on isogenous_curve(c).
inline DescentReport descent_side(const Curve& c, Side side, const DescentOptions& options = {})
{
  DescentReport report{side == Side::gamma ? c : isogenous_curve(c), side};
  report.coefficient = report.curve.b();
  report.middle = report.curve.a();
  report.candidates = candidate_classes(report.coefficient, report.middle);

  const ClassGroup group(report.coefficient);
  const SquareClass one, top = SquareClass::of(report.coefficient);
  std::vector<std::uint8_t> allowed(group.order(), 0);
  std::vector<std::uint32_t> order;
  for (const auto& cls : report.candidates) {
    allowed[group.mask(cls)] = 1;
    order.push_back(group.mask(cls));
  }

  for (const auto& cls : report.candidates) {
    if (cls == one || cls == top) continue;
    ClassAnalysis ca{cls, Unknown{0}, {}};
    for (auto& t : class_torsors(report.coefficient, report.middle, cls)) ca.torsors.push_back({t, Unknown{0}});
    report.classes.push_back(std::move(ca));
  }

  // Local obstructions, independent per torsor.
  std::vector<std::pair<std::size_t, std::size_t>> jobs_list;
  for (std::size_t i = 0; i < report.classes.size(); ++i)
    for (std::size_t j = 0; j < report.classes[i].torsors.size(); ++j) jobs_list.emplace_back(i, j);
  parallel_for(jobs_list.size(), options.jobs, [&](std::size_t k) {
    auto& ta = report.classes[jobs_list[k].first].torsors[jobs_list[k].second];
    if (auto m = find_obstruction(ta.torsor, options.modulus_cap)) ta.status = Obstructed{*m};
  });
  for (auto& ca : report.classes) {
    ca.status = detail::aggregate(ca.torsors);
    if (is_obstructed(ca.status)) allowed[group.mask(ca.cls)] = 0;
  }

  std::vector<std::uint32_t> confirmed{group.mask(one), group.mask(top)};

  auto span = detail::span(confirmed);
  auto in_span = [&](std::uint32_t m) { return std::find(span.begin(), span.end(), m) != span.end(); };
  for (auto& ca : report.classes) {
    if (is_obstructed(ca.status)) continue;
    const std::uint32_t m = group.mask(ca.cls);
    if (in_span(m)) continue;
    // Searching only pays if some admissible subgroup holds span + m.
    std::vector<std::uint32_t> trial = confirmed;
    trial.push_back(m);
    auto grown = detail::span(trial);
    if (!std::all_of(grown.begin(), grown.end(), [&](std::uint32_t v) { return allowed[v] != 0; })) continue;
    for (auto& ta : ca.torsors) {
      if (is_obstructed(ta.status)) continue;
      if (auto w = search_witness(ta.torsor, options.search_bound, options.jobs)) {
        ta.status = Solved{*w};
        break;
      }
      ta.status = Unknown{options.search_bound};
    }
    ca.status = detail::aggregate(ca.torsors);
    if (is_solved(ca.status)) {
      confirmed.push_back(m);
      span = std::move(grown);
    }
  }

  // Points extend the image where the torsor search came up short.
  if (options.point_bound > 0 && span.size() < largest_subgroup(confirmed, allowed, order).size()) {
    for (const auto& p : point_search(report.curve, options.point_bound, options.jobs)) {
      SquareClass cls = SquareClass::of(detail::class_of_x(p.x()));
      if (std::any_of(report.points.begin(), report.points.end(), [&](const auto& e) { return e.cls == cls; }))
        continue;
      std::uint32_t m = group.mask(cls);
      if (!allowed[m])
        throw std::logic_error("descent inconsistency: point " + to_string(p) + " lies in excluded class " +
                               cls.value().str());
      report.points.push_back({cls, p});
      if (!in_span(m)) {
        confirmed.push_back(m);
        span = detail::span(confirmed);
      }
    }
  }

  auto possible = largest_subgroup(confirmed, allowed, order);
  auto to_classes = [&](const std::vector<std::uint32_t>& masks) {
    std::vector<SquareClass> out;
    for (auto v : masks) out.push_back(group.element(v));
    std::sort(out.begin(), out.end());
    return out;
  };
  report.confirmed = to_classes(span);
  report.possible = to_classes(possible);
  return report;
}

struct RankBounds {
  unsigned lower = 0;
  unsigned upper = 0;
  friend bool operator==(const RankBounds&, const RankBounds&) = default;
};

/// 2^r = |image| * |image'| / 4, evaluated on confirmed and possible images.
inline RankBounds bounds_from(const DescentReport& gamma, const DescentReport& gamma_bar)
{
  auto log2 = [](std::size_t n) { return static_cast<int>(std::bit_width(n)) - 1; };
  int lower = log2(gamma.confirmed.size()) + log2(gamma_bar.confirmed.size()) - 2;
  int upper = log2(gamma.possible.size()) + log2(gamma_bar.possible.size()) - 2;
  if (upper < 0) throw std::logic_error("descent inconsistency: possible images too small");
  return {static_cast<unsigned>(std::max(lower, 0)), static_cast<unsigned>(upper)};
}

struct Descent {
  DescentReport gamma;
  DescentReport gamma_bar;
  RankBounds bounds;
  friend bool operator==(const Descent&, const Descent&) = default;
};

inline Descent descend(const Curve& c, const DescentOptions& options = {})
{
  Descent d{descent_side(c, Side::gamma, options), descent_side(c, Side::gamma_bar, options), {}};
  d.bounds = bounds_from(d.gamma, d.gamma_bar);
  return d;
}

inline RankBounds rank_bounds(const Curve& c, std::uint64_t bound)
{
  DescentOptions options;
  options.search_bound = bound;
  return descend(c, options).bounds;
}

}  // namespace isodescent
