#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torex/geometry.hpp"
#include "torex/rational.hpp"

namespace torex {

/// 2x2 integer matrix [[a,b],[c,d]] with determinant +1 or -1. Acts on the
/// plane by (x,y) -> (ax+by, cx+dy); since it maps Z^2 onto itself and
/// |det| = 1, it also acts on the torus R^2/Z^2 preserving measure.
class UnimodularMap {
 public:
  UnimodularMap(long long a, long long b, long long c, long long d)
      : a_(a), b_(b), c_(c), d_(d) {
    long long det = a * d - b * c;
    if (det != 1 && det != -1)
      throw std::invalid_argument("matrix determinant must be +1 or -1");
  }

  static UnimodularMap identity() { return {1, 0, 0, 1}; }

  long long a() const { return a_; }
  long long b() const { return b_; }
  long long c() const { return c_; }
  long long d() const { return d_; }
  long long det() const { return a_ * d_ - b_ * c_; }

  UnimodularMap inverse() const {
    long long s = det();  // +1 or -1, so the adjugate divided by det is
    return {s * d_, -s * b_, -s * c_, s * a_};  // still integral
  }

  /// this ∘ rhs: apply rhs first, then this.
  UnimodularMap compose(const UnimodularMap& rhs) const {
    return {a_ * rhs.a_ + b_ * rhs.c_, a_ * rhs.b_ + b_ * rhs.d_,
            c_ * rhs.a_ + d_ * rhs.c_, c_ * rhs.b_ + d_ * rhs.d_};
  }

  Point2 apply(const Point2& p) const {
    return {Rational(a_) * p.x + Rational(b_) * p.y,
            Rational(c_) * p.x + Rational(d_) * p.y};
  }

  friend bool operator==(const UnimodularMap& l, const UnimodularMap& r) {
    return l.a_ == r.a_ && l.b_ == r.b_ && l.c_ == r.c_ && l.d_ == r.d_;
  }

 private:
  long long a_, b_, c_, d_;
};

/// (x,y) -> (x+y, y): points slide horizontally by their height.
inline UnimodularMap horizontal_shear() { return {1, 1, 0, 1}; }

/// (x,y) -> (x, x+y): the transpose shear, sliding vertically.
inline UnimodularMap vertical_shear() { return {1, 0, 1, 1}; }

/// Named collection of unimodular maps used in the expansion functional.
class GeneratorSet {
 public:
  /// The two forward shears only (one-sided, "directed" expansion).
  static GeneratorSet forward_shears() {
    return GeneratorSet("forward", {horizontal_shear(), vertical_shear()});
  }

  /// Both shears together with their inverses (symmetric expansion).
  static GeneratorSet symmetric_shears() {
    return GeneratorSet("symmetric",
                        {horizontal_shear(), vertical_shear(),
                         horizontal_shear().inverse(),
                         vertical_shear().inverse()});
  }

  static GeneratorSet custom(std::string name,
                             std::vector<UnimodularMap> maps) {
    return GeneratorSet(std::move(name), std::move(maps));
  }

  const std::string& name() const { return name_; }
  const std::vector<UnimodularMap>& maps() const { return maps_; }

 private:
  GeneratorSet(std::string name, std::vector<UnimodularMap> maps)
      : name_(std::move(name)), maps_(std::move(maps)) {}

  std::string name_;
  std::vector<UnimodularMap> maps_;
};

inline ConvexPolygon unit_square() {
  return ConvexPolygon::from_ccw_vertices(
      {{Rational(0), Rational(0)},
       {Rational(1), Rational(0)},
       {Rational(1), Rational(1)},
       {Rational(0), Rational(1)}});
}

/// A measurable subset of the torus R^2/Z^2, stored as a region inside the
/// closed fundamental square [0,1]^2. Boundary overlap is measure zero and
/// ignored; equality of torus sets means symmetric difference of measure 0.
class TorusRegion {
 public:
  TorusRegion() = default;  // the empty set

  static TorusRegion from_reduced(RegionSet r) {
    for (const auto& atom : r.atoms()) {
      Rational x0, y0, x1, y1;
      atom.bounds(x0, y0, x1, y1);
      if (x0 < 0 || y0 < 0 || x1 > 1 || y1 > 1)
        throw std::invalid_argument(
            "torus region atom lies outside the unit square");
    }
    TorusRegion t;
    t.region_ = std::move(r);
    return t;
  }

  static TorusRegion full() { return from_reduced(RegionSet::single(unit_square())); }

  const RegionSet& region() const { return region_; }
  Rational measure() const { return region_.measure(); }
  bool empty() const { return region_.empty(); }

  /// Torus membership for the closed set: reduces p mod 1 and also tries the
  /// representative on the far edge of the square when a coordinate lands
  /// exactly on 0, so wrap-around boundary points are honored.
  bool contains(const Point2& p) const {
    Rational fx = frac01(p.x);
    Rational fy = frac01(p.y);
    std::vector<Rational> xs{fx}, ys{fy};
    if (fx == 0) xs.push_back(Rational(1));
    if (fy == 0) ys.push_back(Rational(1));
    for (const auto& x : xs)
      for (const auto& y : ys)
        if (region_.contains({x, y})) return true;
    return false;
  }

 private:
  RegionSet region_;
};

/// Reduction mod Z^2 of a bounded plane region into [0,1]^2: each atom is
/// translated by every integer vector whose translate meets the square,
/// clipped, and the pieces are unioned (the set may wrap onto itself).
inline TorusRegion project(const RegionSet& r) {
  const ConvexPolygon square = unit_square();
  RegionSet acc;
  for (const auto& atom : r.atoms()) {
    Rational x0, y0, x1, y1;
    atom.bounds(x0, y0, x1, y1);
    Integer dx_lo = ceil_int(-x1), dx_hi = floor_int(1 - x0);
    Integer dy_lo = ceil_int(-y1), dy_hi = floor_int(1 - y0);
    for (Integer dx = dx_lo; dx <= dx_hi; ++dx) {
      for (Integer dy = dy_lo; dy <= dy_hi; ++dy) {
        ConvexPolygon moved = atom.translated(Rational(dx), Rational(dy));
        if (auto piece = intersect_convex(moved, square))
          acc = region_union(acc, RegionSet::single(std::move(*piece)));
      }
    }
  }
  return TorusRegion::from_reduced(std::move(acc));
}

/// Image of a torus set under a unimodular map: lift to the square, apply
/// the map linearly, reduce. Preserves measure exactly (|det| = 1).
inline TorusRegion apply_map_torus(const UnimodularMap& m,
                                   const TorusRegion& t) {
  std::vector<ConvexPolygon> atoms;
  atoms.reserve(t.region().atoms().size());
  for (const auto& atom : t.region().atoms())
    atoms.push_back(linear_image(atom, Rational(m.a()), Rational(m.b()),
                                 Rational(m.c()), Rational(m.d())));
  // A bijection of the plane keeps interiors disjoint.
  return project(RegionSet::from_disjoint_atoms(std::move(atoms)));
}

inline TorusRegion translate_torus(const TorusRegion& t, const Rational& dx,
                                   const Rational& dy) {
  return project(t.region().translated(dx, dy));
}

/// t ∪ ⋃_{σ∈Σ} σ(t) on the torus.
inline TorusRegion expansion_union(const GeneratorSet& gens,
                                   const TorusRegion& t) {
  RegionSet acc = t.region();
  for (const auto& m : gens.maps())
    acc = region_union(acc, apply_map_torus(m, t).region());
  return TorusRegion::from_reduced(std::move(acc));
}

inline Rational expansion_ratio(const GeneratorSet& gens,
                                const TorusRegion& t) {
  Rational base = t.measure();
  if (base == 0)
    throw std::domain_error("expansion ratio undefined for a null set");
  return expansion_union(gens, t).measure() / base;
}

/// r ∪ ⋃_{σ∈Σ} σ(r) in the plane (no reduction mod 1).
inline RegionSet plane_expansion_union(const GeneratorSet& gens,
                                       const RegionSet& r) {
  RegionSet acc = r;
  for (const auto& m : gens.maps()) {
    std::vector<ConvexPolygon> atoms;
    atoms.reserve(r.atoms().size());
    for (const auto& atom : r.atoms())
      atoms.push_back(linear_image(atom, Rational(m.a()), Rational(m.b()),
                                   Rational(m.c()), Rational(m.d())));
    acc = region_union(acc, RegionSet::from_disjoint_atoms(std::move(atoms)));
  }
  return acc;
}

inline Rational expansion_ratio_plane(const GeneratorSet& gens,
                                      const RegionSet& r) {
  Rational base = r.measure();
  if (base == 0)
    throw std::domain_error("expansion ratio undefined for a null set");
  return plane_expansion_union(gens, r).measure() / base;
}

inline Rational torus_symmetric_difference_measure(const TorusRegion& a,
                                                   const TorusRegion& b) {
  return symmetric_difference_measure(a.region(), b.region());
}

}  // namespace torex
