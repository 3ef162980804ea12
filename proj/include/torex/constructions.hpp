#pragma once

#include <stdexcept>
#include <utility>

#include "torex/geometry.hpp"
#include "torex/rational.hpp"
#include "torex/torus.hpp"

namespace torex {

/// Strip half-width. Closed-form constructors are validated for
/// 0 < value <= 1/8: wide enough strips create overlap coincidences the
/// closed forms below do not account for.
class Epsilon {
 public:
  explicit Epsilon(Rational v) : value_(std::move(v)) {
    if (value_ <= 0 || value_ > Rational(1) / 8)
      throw std::domain_error("epsilon must lie in (0, 1/8]");
  }
  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

/// Torus strip {dist(cx*x + cy*y - offset, Z) <= eps}: for each integer k
/// reachable on the unit square, the band cx*x+cy*y in [k+offset-eps,
/// k+offset+eps] is built as a long quad and clipped to the square.
inline TorusRegion torus_strip(long long cx, long long cy, const Rational& eps,
                               const Rational& offset = Rational(0)) {
  if (cx == 0 && cy == 0)
    throw std::invalid_argument("strip needs a nonzero linear form");
  if (eps <= 0 || eps >= Rational(1) / 2)
    throw std::domain_error("strip half-width must lie in (0, 1/2)");
  const long long s = cx * cx + cy * cy;
  const Rational nx = Rational(cx) / s, ny = Rational(cy) / s;  // n / |n|^2
  const Rational ex = Rational(cy), ey = Rational(-cx);         // along-band
  const ConvexPolygon square = unit_square();
  // Range of the form over [0,1]^2, padded by eps, determines the band set.
  const Rational lo = Rational(std::min<long long>(0, cx) +
                               std::min<long long>(0, cy));
  const Rational hi = Rational(std::max<long long>(0, cx) +
                               std::max<long long>(0, cy));
  RegionSet acc;
  for (Integer k = ceil_int(lo - offset - eps); k <= floor_int(hi - offset + eps);
       ++k) {
    const Rational v = Rational(k) + offset;
    const Point2 c0{v * nx, v * ny};
    // Extent 8 along the band always covers the unit square (|e.p|/|e|^2 <= 2).
    const Point2 along{8 * ex, 8 * ey};
    const Point2 up{eps * nx, eps * ny};
    ConvexPolygon band = ConvexPolygon::from_ccw_vertices(
        {c0 - along - up, c0 + along - up, c0 + along + up, c0 - along + up});
    if (auto piece = intersect_convex(band, square))
      acc = region_union(acc, RegionSet::single(std::move(*piece)));
  }
  return TorusRegion::from_reduced(std::move(acc));
}

/// Union of the vertical and horizontal strips of half-width eps:
/// {dist(x,Z) <= eps or dist(y,Z) <= eps} on the torus.
inline TorusRegion build_cross(const Epsilon& eps) {
  TorusRegion v = torus_strip(1, 0, eps.value());
  TorusRegion h = torus_strip(0, 1, eps.value());
  return TorusRegion::from_reduced(region_union(v.region(), h.region()));
}

/// Cross plus the antidiagonal strip {dist(x+y,Z) <= eps}.
inline TorusRegion build_cross_antidiag(const Epsilon& eps) {
  TorusRegion c = build_cross(eps);
  TorusRegion a = torus_strip(1, 1, eps.value());
  return TorusRegion::from_reduced(region_union(c.region(), a.region()));
}

/// The cross translated by (1/2,1/2) on the torus; same measure, but its
/// support stays at sup-norm distance >= 1/2 - eps from the origin.
inline TorusRegion build_cross_shifted(const Epsilon& eps) {
  return translate_torus(build_cross(eps), Rational(1) / 2, Rational(1) / 2);
}

// Closed forms, from inclusion-exclusion over the elementary strips
// V={dist(x,Z)<=e}, H={dist(y,Z)<=e}, A={dist(x+y,Z)<=e}, D={dist(x-y,Z)<=e}
// with e <= 1/8. Each strip has measure 2e. For two strips with independent
// forms f, g, the map p -> (f(p), g(p)) mod 1 is a measure-preserving
// self-cover of the torus, so the intersection — the preimage of a
// (2e)x(2e) square — has measure 4e^2 for all six pairs. Triples: V,H pin
// both coordinates near 0 mod 1, where the A (or D) condition cuts two
// corner half-cells off the (2e)^2 square, leaving 3e^2; V,A,D (or H,A,D)
// pin the point near a single cell on which the third condition is the
// 45-degree rotated square of diagonal 2e, measure 2e^2. The quadruple is
// that same rotated square: 2e^2. Hence
//   m(V u H)           = 4e - 4e^2
//   m(V u H u A)       = 6e - 9e^2
//   m(V u H u A u D)   = 8e - 16e^2.
// Shifting every strip offset by 1/2 empties the V,H,A and V,H,D triples
// and the quadruple, giving 8e - 20e^2 for the shifted four-strip union.

inline Rational cross_measure_form(const Rational& e) { return 4 * e - 4 * e * e; }

inline Rational cross_antidiag_measure_form(const Rational& e) {
  return 6 * e - 9 * e * e;
}

/// Measure of V u H u A u D; both expansion unions below equal this set.
inline Rational four_strip_union_form(const Rational& e) {
  return 8 * e - 16 * e * e;
}

inline Rational shifted_union_form(const Rational& e) {
  return 8 * e - 20 * e * e;
}

/// Everything the verifier compares, all computed twice: closed form vs the
/// exact engine. Construction throws if the two routes ever disagree.
struct ExpansionReport {
  Rational epsilon;

  // cross under the symmetric shear set, compared against bound 2*m
  Rational cross_measure;   // 4e - 4e^2
  Rational cross_union;     // 8e - 16e^2
  Rational cross_ratio;
  Rational cross_bound;     // 2 * cross_measure
  Rational cross_margin;    // bound - union = 8e^2

  // cross+antidiag under the forward shear set, against bound (4/3)*m
  Rational antidiag_measure;  // 6e - 9e^2
  Rational antidiag_union;    // 8e - 16e^2
  Rational antidiag_ratio;
  Rational antidiag_bound;    // (4/3) * antidiag_measure
  Rational antidiag_margin;   // bound - union = 4e^2

  // shifted cross under the symmetric shear set, against bound 2*m
  Rational shifted_measure;  // 4e - 4e^2
  Rational shifted_union;    // 8e - 20e^2
  Rational shifted_ratio;    // (2-5e)/(1-e)
  Rational shifted_bound;
  Rational shifted_margin;
};

namespace detail {

inline void require_agreement(const Rational& engine, const Rational& form,
                              const char* what) {
  if (engine != form)
    throw std::logic_error(std::string("engine disagrees with closed form: ") +
                           what + " engine=" + to_fraction_string(engine) +
                           " form=" + to_fraction_string(form));
}

}  // namespace detail

inline ExpansionReport closed_form_report(const Epsilon& eps) {
  const Rational& e = eps.value();
  const GeneratorSet sym = GeneratorSet::symmetric_shears();
  const GeneratorSet fwd = GeneratorSet::forward_shears();

  ExpansionReport r;
  r.epsilon = e;

  TorusRegion cross = build_cross(eps);
  r.cross_measure = cross.measure();
  r.cross_union = expansion_union(sym, cross).measure();
  detail::require_agreement(r.cross_measure, cross_measure_form(e),
                            "cross measure");
  detail::require_agreement(r.cross_union, four_strip_union_form(e),
                            "cross expansion union");
  r.cross_bound = 2 * r.cross_measure;
  r.cross_margin = r.cross_bound - r.cross_union;
  r.cross_ratio = r.cross_union / r.cross_measure;

  TorusRegion cd = build_cross_antidiag(eps);
  r.antidiag_measure = cd.measure();
  r.antidiag_union = expansion_union(fwd, cd).measure();
  detail::require_agreement(r.antidiag_measure, cross_antidiag_measure_form(e),
                            "cross+antidiag measure");
  detail::require_agreement(r.antidiag_union, four_strip_union_form(e),
                            "cross+antidiag expansion union");
  r.antidiag_bound = Rational(4) / 3 * r.antidiag_measure;
  r.antidiag_margin = r.antidiag_bound - r.antidiag_union;
  r.antidiag_ratio = r.antidiag_union / r.antidiag_measure;

  TorusRegion shifted = build_cross_shifted(eps);
  r.shifted_measure = shifted.measure();
  r.shifted_union = expansion_union(sym, shifted).measure();
  detail::require_agreement(r.shifted_measure, cross_measure_form(e),
                            "shifted cross measure");
  detail::require_agreement(r.shifted_union, shifted_union_form(e),
                            "shifted cross expansion union");
  r.shifted_bound = 2 * r.shifted_measure;
  r.shifted_margin = r.shifted_bound - r.shifted_union;
  r.shifted_ratio = r.shifted_union / r.shifted_measure;

  return r;
}

/// Structure check: the forward-shear images of cross+antidiag cover exactly
/// the cross plus the single other diagonal strip {dist(x-y,Z) <= eps}.
inline bool forward_images_add_single_diagonal(const Epsilon& eps) {
  TorusRegion cd = build_cross_antidiag(eps);
  RegionSet img;
  const GeneratorSet fwd = GeneratorSet::forward_shears();
  for (const auto& m : fwd.maps())
    img = region_union(img, apply_map_torus(m, cd).region());
  RegionSet expect =
      region_union(build_cross(eps).region(),
                   torus_strip(1, -1, eps.value()).region());
  return symmetric_difference_measure(img, expect) == 0;
}

/// Report-only cross-pairing: expand cross+antidiag by the SYMMETRIC set and
/// compare against (4/3) of the CROSS measure. The inverse shears drag in
/// the steeper strips {dist(x+2y,Z)<=e} and {dist(2x+y,Z)<=e}, so this
/// pairing expands heavily; it is reported, not asserted.
struct MixedPairing {
  Rational union_measure;  // engine value; equals 12e - 36e^2 for e <= 1/8
  Rational bound;          // (4/3) * cross measure
  bool below_bound;
};

inline MixedPairing cross_antidiag_under_symmetric(const Epsilon& eps) {
  MixedPairing m;
  m.union_measure =
      expansion_union(GeneratorSet::symmetric_shears(), build_cross_antidiag(eps))
          .measure();
  m.bound = Rational(4) / 3 * build_cross(eps).measure();
  m.below_bound = m.union_measure < m.bound;
  return m;
}

/// Closed sup-norm ball of radius r around the torus origin: four corner
/// squares of the fundamental domain. Requires 0 < r < 1/2.
inline TorusRegion torus_corner_ball(const Rational& r) {
  if (r <= 0 || r >= Rational(1) / 2)
    throw std::domain_error("corner ball radius must lie in (0, 1/2)");
  auto sq = [](const Rational& x0, const Rational& y0, const Rational& x1,
               const Rational& y1) {
    return ConvexPolygon::from_ccw_vertices(
        {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
  };
  const Rational zero(0), one(1);
  std::vector<ConvexPolygon> atoms{sq(zero, zero, r, r),
                                   sq(one - r, zero, one, r),
                                   sq(zero, one - r, r, one),
                                   sq(one - r, one - r, one, one)};
  return TorusRegion::from_reduced(
      RegionSet::from_disjoint_atoms(std::move(atoms)));
}

/// True iff the shifted cross meets the open sup-norm ball of radius
/// 1/2 - eps around the origin only in measure zero.
inline bool shifted_support_clears_origin(const Epsilon& eps) {
  TorusRegion ball = torus_corner_ball(Rational(1) / 2 - eps.value());
  return intersect_regions(build_cross_shifted(eps).region(), ball.region())
             .measure() == 0;
}

}  // namespace torex
