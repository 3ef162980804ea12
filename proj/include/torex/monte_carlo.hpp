#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "torex/rational.hpp"
#include "torex/torus.hpp"

namespace torex {

/// Torus set given purely by a membership predicate: a finite union of
/// strips {dist(cx*x + cy*y + offset, Z) <= eps}. This family is closed
/// under union, translation, and unimodular preimages, so every set the
/// exact engine builds has an implicit twin here — with no polygon code
/// involved, which is what makes the oracle independent.
class ImplicitSet {
 public:
  struct StripAtom {
    long long cx;
    long long cy;
    Rational offset;  // normalized into [0,1)
    Rational eps;     // capped at 1/2 (a strip that wide is everything)
  };

  static ImplicitSet empty() { return ImplicitSet(); }

  static ImplicitSet full() {
    return strip(1, 0, Rational(1) / 2);
  }

  static ImplicitSet strip(long long cx, long long cy, const Rational& eps,
                           const Rational& offset = Rational(0)) {
    if (cx == 0 && cy == 0)
      throw std::invalid_argument("strip needs a nonzero linear form");
    if (eps <= 0) throw std::domain_error("strip half-width must be positive");
    ImplicitSet s;
    s.atoms_.push_back(
        {cx, cy, frac01(offset), eps > Rational(1) / 2 ? Rational(1) / 2 : eps});
    return s;
  }

  ImplicitSet unioned_with(const ImplicitSet& other) const {
    ImplicitSet s = *this;
    s.atoms_.insert(s.atoms_.end(), other.atoms_.begin(), other.atoms_.end());
    return s;
  }

  ImplicitSet translated(const Rational& dx, const Rational& dy) const {
    ImplicitSet s = *this;
    for (auto& a : s.atoms_)
      a.offset = frac01(a.offset - a.cx * dx - a.cy * dy);
    return s;
  }

  /// The image under m: membership at p tests the original at m^-1(p).
  /// Composing the linear form with m^-1 keeps integer coefficients.
  ImplicitSet image_under(const UnimodularMap& m) const {
    const UnimodularMap inv = m.inverse();
    ImplicitSet s = *this;
    for (auto& a : s.atoms_) {
      long long cx = a.cx * inv.a() + a.cy * inv.c();
      long long cy = a.cx * inv.b() + a.cy * inv.d();
      a.cx = cx;
      a.cy = cy;
    }
    return s;
  }

  /// Exact membership for rational points; Z^2-periodic by construction.
  bool contains(const Point2& p) const {
    for (const auto& a : atoms_) {
      Rational t = a.cx * p.x + a.cy * p.y + a.offset;
      if (dist_to_integers(t) <= a.eps) return true;
    }
    return false;
  }

  const std::vector<StripAtom>& atoms() const { return atoms_; }

 private:
  std::vector<StripAtom> atoms_;
};

inline ImplicitSet image_set(const UnimodularMap& m, const ImplicitSet& s) {
  return s.image_under(m);
}

inline ImplicitSet implicit_expansion_union(const GeneratorSet& gens,
                                            const ImplicitSet& s) {
  ImplicitSet acc = s;
  for (const auto& m : gens.maps()) acc = acc.unioned_with(s.image_under(m));
  return acc;
}

struct EstimateResult {
  double estimate;                  // hit fraction
  unsigned long long sample_count;
  double std_error;                 // binomial: sqrt(est*(1-est)/n)
  std::uint64_t seed;
  unsigned long long hits;          // exact integer, for determinism checks
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Strip test specialised to dyadic samples x = ax/2^53, y = ay/2^53 in
/// 128-bit integers. With the linear form t = N/M (M = od*2^53),
/// dist(t, Z) <= en/ed  iff  min(r, M-r)*ed <= en*M where r = N mod M.
/// All magnitudes stay under 2^114 given the fast-path bounds below.
struct FastAtom {
  long long cx, cy;
  __int128 on, od, en, ed;
};

inline bool fast_atom_ok(const ImplicitSet::StripAtom& a) {
  const Integer kCoef = Integer(1) << 10;
  const Integer kDen = Integer(1) << 20;
  const Integer kEpsDen = Integer(1) << 40;
  return Integer(a.cx) <= kCoef && Integer(-a.cx) <= kCoef &&
         Integer(a.cy) <= kCoef && Integer(-a.cy) <= kCoef &&
         rat_den(a.offset) <= kDen && rat_den(a.eps) <= kEpsDen &&
         rat_num(a.eps) <= rat_den(a.eps);
}

inline FastAtom to_fast_atom(const ImplicitSet::StripAtom& a) {
  FastAtom f;
  f.cx = a.cx;
  f.cy = a.cy;
  f.on = rat_num(a.offset).convert_to<long long>();
  f.od = rat_den(a.offset).convert_to<long long>();
  f.en = rat_num(a.eps).convert_to<long long>();
  f.ed = rat_den(a.eps).convert_to<long long>();
  return f;
}

}  // namespace detail

/// Seeded uniform sampling of [0,1)^2 with exact membership tests. Samples
/// are dyadic rationals (53 random bits per coordinate) drawn in fixed
/// blocks of 2^16 from per-block engines, so results are bit-reproducible
/// for a given (n, seed) on every platform, and hit counts merge
/// associatively if blocks are ever distributed.
inline EstimateResult estimate_measure(const ImplicitSet& s,
                                       unsigned long long n,
                                       std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample count must be at least 1");

  bool fast_ok = true;
  for (const auto& a : s.atoms())
    if (!detail::fast_atom_ok(a)) fast_ok = false;
  std::vector<detail::FastAtom> fast;
  if (fast_ok)
    for (const auto& a : s.atoms()) fast.push_back(detail::to_fast_atom(a));

  constexpr unsigned long long kBlock = 1ull << 16;
  constexpr __int128 kTwo53 = static_cast<__int128>(1) << 53;
  const Rational kTwo53R = Rational(Integer(1) << 53);

  unsigned long long hits = 0;
  unsigned long long produced = 0;
  for (unsigned long long block = 0; produced < n; ++block) {
    std::mt19937_64 eng(
        detail::mix64(seed + (block + 1) * 0x9E3779B97F4A7C15ULL));
    unsigned long long take = std::min(kBlock, n - produced);
    for (unsigned long long i = 0; i < take; ++i) {
      const std::uint64_t ax = eng() >> 11;  // 53 bits
      const std::uint64_t ay = eng() >> 11;
      bool hit = false;
      if (fast_ok) {
        for (const auto& f : fast) {
          __int128 lin = static_cast<__int128>(f.cx) * ax +
                         static_cast<__int128>(f.cy) * ay;
          __int128 m = f.od * kTwo53;
          __int128 r = (f.od * lin + f.on * kTwo53) % m;
          if (r < 0) r += m;
          __int128 d = r < m - r ? r : m - r;
          if (d * f.ed <= f.en * m) {
            hit = true;
            break;
          }
        }
      } else {
        Point2 p{Rational(Integer(ax)) / kTwo53R,
                 Rational(Integer(ay)) / kTwo53R};
        hit = s.contains(p);
      }
      hits += hit ? 1 : 0;
    }
    produced += take;
  }

  EstimateResult r;
  r.hits = hits;
  r.sample_count = n;
  r.seed = seed;
  r.estimate = static_cast<double>(hits) / static_cast<double>(n);
  r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) /
                          static_cast<double>(n));
  return r;
}

enum class OracleVerdict { consistent, flagged, failed };

/// Two-tier statistical comparison: within 3 standard errors is consistent,
/// 3..4 is flagged (reported, not failed), beyond 4 is a failure.
struct OracleCheck {
  OracleVerdict verdict;
  double exact_value;
  double sigmas;
  EstimateResult estimate;
};

inline OracleCheck check_against_exact(const Rational& exact,
                                       const EstimateResult& est) {
  OracleCheck c;
  c.exact_value = to_double(exact);
  c.estimate = est;
  double dev = std::abs(est.estimate - c.exact_value);
  if (est.std_error == 0)
    c.sigmas = dev == 0 ? 0 : std::numeric_limits<double>::infinity();
  else
    c.sigmas = dev / est.std_error;
  c.verdict = c.sigmas <= 3 ? OracleVerdict::consistent
              : c.sigmas <= 4 ? OracleVerdict::flagged
                              : OracleVerdict::failed;
  return c;
}

/// Implicit twins of the polygon-based constructions (same parameters, no
/// shared code path).
inline ImplicitSet implicit_cross(const Rational& eps) {
  return ImplicitSet::strip(1, 0, eps).unioned_with(
      ImplicitSet::strip(0, 1, eps));
}

inline ImplicitSet implicit_cross_antidiag(const Rational& eps) {
  return implicit_cross(eps).unioned_with(ImplicitSet::strip(1, 1, eps));
}

inline ImplicitSet implicit_cross_shifted(const Rational& eps) {
  return implicit_cross(eps).translated(Rational(1) / 2, Rational(1) / 2);
}

}  // namespace torex
