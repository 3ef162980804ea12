#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torex/rational.hpp"

namespace torex {

struct Point2 {
  Rational x;
  Rational y;

  friend Point2 operator+(const Point2& a, const Point2& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend Point2 operator-(const Point2& a, const Point2& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend bool operator==(const Point2& a, const Point2& b) {
    return a.x == b.x && a.y == b.y;
  }
};

/// Cross product of (a-o) and (b-o). Positive iff o,a,b make a left turn.
inline Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline int sign(const Rational& r) { return r == 0 ? 0 : (r < 0 ? -1 : 1); }

inline int orientation(const Point2& o, const Point2& a, const Point2& b) {
  return sign(cross(o, a, b));
}

namespace detail {

/// Drop consecutive duplicates and collinear middle vertices (cyclically).
/// Repeats until stable; removals can expose new collinear triples.
inline void canonicalize_ring(std::vector<Point2>& vs) {
  bool changed = true;
  while (changed && vs.size() >= 3) {
    changed = false;
    std::vector<Point2> out;
    out.reserve(vs.size());
    size_t n = vs.size();
    for (size_t i = 0; i < n; ++i) {
      const Point2& prev = vs[(i + n - 1) % n];
      const Point2& cur = vs[i];
      const Point2& next = vs[(i + 1) % n];
      if (cur == next) {
        changed = true;
        continue;
      }
      if (orientation(prev, cur, next) == 0) {
        changed = true;
        continue;
      }
      out.push_back(cur);
    }
    vs = std::move(out);
  }
  if (vs.size() < 3) vs.clear();
}

inline Rational signed_area_twice(const std::vector<Point2>& vs) {
  Rational s = 0;
  size_t n = vs.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& p = vs[i];
    const Point2& q = vs[(i + 1) % n];
    s += p.x * q.y - q.x * p.y;
  }
  return s;
}

}  // namespace detail

/// Atomic convex polygon: >= 3 vertices, strictly convex, counter-clockwise,
/// positive area. Immutable after construction.
class ConvexPolygon {
 public:
  static ConvexPolygon from_ccw_vertices(std::vector<Point2> vs) {
    if (vs.size() < 3)
      throw std::invalid_argument("polygon needs at least 3 vertices");
    size_t n = vs.size();
    for (size_t i = 0; i < n; ++i) {
      if (orientation(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0)
        throw std::invalid_argument(
            "polygon is not strictly convex counter-clockwise");
    }
    return ConvexPolygon(std::move(vs));
  }

  const std::vector<Point2>& vertices() const { return verts_; }

  Rational area() const {
    return detail::signed_area_twice(verts_) / 2;
  }

  /// Closed containment: boundary points count as inside.
  bool contains(const Point2& p) const {
    size_t n = verts_.size();
    for (size_t i = 0; i < n; ++i) {
      if (orientation(verts_[i], verts_[(i + 1) % n], p) < 0) return false;
    }
    return true;
  }

  ConvexPolygon translated(const Rational& dx, const Rational& dy) const {
    std::vector<Point2> vs = verts_;
    for (auto& v : vs) {
      v.x += dx;
      v.y += dy;
    }
    return ConvexPolygon(std::move(vs));
  }

  void bounds(Rational& min_x, Rational& min_y, Rational& max_x,
              Rational& max_y) const {
    min_x = max_x = verts_[0].x;
    min_y = max_y = verts_[0].y;
    for (const auto& v : verts_) {
      if (v.x < min_x) min_x = v.x;
      if (v.x > max_x) max_x = v.x;
      if (v.y < min_y) min_y = v.y;
      if (v.y > max_y) max_y = v.y;
    }
  }

 private:
  friend std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon&,
                                                     const Point2&,
                                                     const Point2&);
  friend ConvexPolygon linear_image(const ConvexPolygon&, const Rational&,
                                    const Rational&, const Rational&,
                                    const Rational&);
  explicit ConvexPolygon(std::vector<Point2> vs) : verts_(std::move(vs)) {}

  std::vector<Point2> verts_;
};

inline Rational area(const ConvexPolygon& p) { return p.area(); }

/// Clip p to the closed half-plane on the left of the directed line a->b.
/// Returns nullopt when the intersection has zero area.
inline std::optional<ConvexPolygon> clip_halfplane(const ConvexPolygon& p,
                                                   const Point2& a,
                                                   const Point2& b) {
  const auto& vs = p.vertices();
  size_t n = vs.size();
  std::vector<Point2> out;
  out.reserve(n + 2);
  for (size_t i = 0; i < n; ++i) {
    const Point2& cur = vs[i];
    const Point2& nxt = vs[(i + 1) % n];
    int sc = orientation(a, b, cur);
    int sn = orientation(a, b, nxt);
    if (sc >= 0) out.push_back(cur);
    if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) {
      // Edge crosses the line; the intersection point is exact.
      Rational num = cross(a, b, cur);
      Rational den = num - cross(a, b, nxt);
      Rational t = num / den;  // den != 0: strict sign change
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  detail::canonicalize_ring(out);
  if (out.size() < 3) return std::nullopt;
  return ConvexPolygon(std::move(out));
}

/// Image under the linear map [[m00,m01],[m10,m11]]; must be invertible.
/// Orientation-reversing maps flip the vertex order to stay CCW.
inline ConvexPolygon linear_image(const ConvexPolygon& p, const Rational& m00,
                                  const Rational& m01, const Rational& m10,
                                  const Rational& m11) {
  Rational det = m00 * m11 - m01 * m10;
  if (det == 0) throw std::invalid_argument("singular linear map");
  std::vector<Point2> vs;
  vs.reserve(p.vertices().size());
  for (const auto& v : p.vertices())
    vs.push_back({m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y});
  if (det < 0) std::reverse(vs.begin(), vs.end());
  return ConvexPolygon(std::move(vs));
}

namespace detail {

inline bool bounds_disjoint(const ConvexPolygon& a, const ConvexPolygon& b) {
  Rational ax0, ay0, ax1, ay1, bx0, by0, bx1, by1;
  a.bounds(ax0, ay0, ax1, ay1);
  b.bounds(bx0, by0, bx1, by1);
  return ax1 < bx0 || bx1 < ax0 || ay1 < by0 || by1 < ay0;
}

}  // namespace detail

/// a ∩ b; convex ∩ convex is empty or a single convex polygon.
/// Measure-zero contact (shared edge or corner) counts as empty.
inline std::optional<ConvexPolygon> intersect_convex(const ConvexPolygon& a,
                                                     const ConvexPolygon& b) {
  if (detail::bounds_disjoint(a, b)) return std::nullopt;
  std::optional<ConvexPolygon> cur = a;
  const auto& bv = b.vertices();
  size_t n = bv.size();
  for (size_t i = 0; i < n && cur; ++i)
    cur = clip_halfplane(*cur, bv[i], bv[(i + 1) % n]);
  return cur;
}

/// a \ b as interior-disjoint convex pieces. Classic edge-by-edge split:
/// piece i lies inside b's first i-1 supporting half-planes and outside
/// the i-th, so pieces are disjoint and their union is a \ b (mod measure 0).
inline std::vector<ConvexPolygon> subtract_convex(const ConvexPolygon& a,
                                                  const ConvexPolygon& b) {
  if (detail::bounds_disjoint(a, b)) return {a};
  std::vector<ConvexPolygon> pieces;
  std::optional<ConvexPolygon> cur = a;
  const auto& bv = b.vertices();
  size_t n = bv.size();
  for (size_t i = 0; i < n && cur; ++i) {
    const Point2& p = bv[i];
    const Point2& q = bv[(i + 1) % n];
    if (auto outside = clip_halfplane(*cur, q, p))  // right of p->q
      pieces.push_back(std::move(*outside));
    cur = clip_halfplane(*cur, p, q);
  }
  return pieces;
}

/// Finite union of interior-disjoint convex polygons. The decomposition is
/// not canonical; only measure and membership (up to measure zero) are
/// contractual.
class RegionSet {
 public:
  RegionSet() = default;

  /// Atoms already known to have pairwise disjoint interiors (library
  /// construction paths maintain this structurally).
  static RegionSet from_disjoint_atoms(std::vector<ConvexPolygon> atoms) {
    RegionSet r;
    r.atoms_ = std::move(atoms);
    return r;
  }

  /// Validating constructor: throws if two atoms overlap with positive area.
  static RegionSet from_atoms(std::vector<ConvexPolygon> atoms);

  static RegionSet single(ConvexPolygon p) {
    RegionSet r;
    r.atoms_.push_back(std::move(p));
    return r;
  }

  const std::vector<ConvexPolygon>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  Rational measure() const {
    Rational m = 0;
    for (const auto& a : atoms_) m += a.area();
    return m;
  }

  bool contains(const Point2& p) const {
    for (const auto& a : atoms_)
      if (a.contains(p)) return true;
    return false;
  }

  RegionSet translated(const Rational& dx, const Rational& dy) const {
    std::vector<ConvexPolygon> out;
    out.reserve(atoms_.size());
    for (const auto& a : atoms_) out.push_back(a.translated(dx, dy));
    return from_disjoint_atoms(std::move(out));
  }

  void bounds(Rational& min_x, Rational& min_y, Rational& max_x,
              Rational& max_y) const {
    if (atoms_.empty())
      throw std::logic_error("bounds of an empty region");
    atoms_[0].bounds(min_x, min_y, max_x, max_y);
    for (size_t i = 1; i < atoms_.size(); ++i) {
      Rational x0, y0, x1, y1;
      atoms_[i].bounds(x0, y0, x1, y1);
      if (x0 < min_x) min_x = x0;
      if (y0 < min_y) min_y = y0;
      if (x1 > max_x) max_x = x1;
      if (y1 > max_y) max_y = y1;
    }
  }

 private:
  std::vector<ConvexPolygon> atoms_;
};

/// Pairwise-atom intersection of two regions (atoms of each side are
/// interior-disjoint, so the pieces are too).
inline RegionSet intersect_regions(const RegionSet& a, const RegionSet& b) {
  std::vector<ConvexPolygon> out;
  for (const auto& pa : a.atoms())
    for (const auto& pb : b.atoms())
      if (auto piece = intersect_convex(pa, pb)) out.push_back(std::move(*piece));
  return RegionSet::from_disjoint_atoms(std::move(out));
}

/// Spec-level intersect of two atomic polygons: empty or one convex atom.
inline RegionSet intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (auto piece = intersect_convex(a, b)) return RegionSet::single(*piece);
  return RegionSet();
}

/// a \ b, decomposing differences into convex pieces.
inline RegionSet subtract(const RegionSet& a, const RegionSet& b) {
  std::vector<ConvexPolygon> pieces(a.atoms());
  for (const auto& hole : b.atoms()) {
    std::vector<ConvexPolygon> next;
    for (const auto& piece : pieces) {
      auto parts = subtract_convex(piece, hole);
      next.insert(next.end(), std::make_move_iterator(parts.begin()),
                  std::make_move_iterator(parts.end()));
    }
    pieces = std::move(next);
  }
  return RegionSet::from_disjoint_atoms(std::move(pieces));
}

/// a ∪ b by iterative subtraction: each incoming atom contributes only the
/// part not already covered, so the output stays interior-disjoint.
inline RegionSet region_union(const RegionSet& a, const RegionSet& b) {
  std::vector<ConvexPolygon> out(a.atoms());
  for (const auto& incoming : b.atoms()) {
    std::vector<ConvexPolygon> fresh{incoming};
    for (const auto& covered : out) {
      std::vector<ConvexPolygon> next;
      for (const auto& piece : fresh) {
        auto parts = subtract_convex(piece, covered);
        next.insert(next.end(), std::make_move_iterator(parts.begin()),
                    std::make_move_iterator(parts.end()));
      }
      fresh = std::move(next);
      if (fresh.empty()) break;
    }
    out.insert(out.end(), std::make_move_iterator(fresh.begin()),
               std::make_move_iterator(fresh.end()));
  }
  return RegionSet::from_disjoint_atoms(std::move(out));
}

inline Rational measure(const RegionSet& r) { return r.measure(); }

inline Rational symmetric_difference_measure(const RegionSet& a,
                                             const RegionSet& b) {
  return subtract(a, b).measure() + subtract(b, a).measure();
}

inline RegionSet RegionSet::from_atoms(std::vector<ConvexPolygon> atoms) {
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j)
      if (auto piece = intersect_convex(atoms[i], atoms[j]))
        throw std::invalid_argument("atoms overlap with positive area");
  return from_disjoint_atoms(std::move(atoms));
}

/// Ear-clipping triangulation of a simple CCW polygon (no holes), for
/// callers with non-convex input. Collinear vertices are tolerated;
/// self-intersecting input is rejected.
inline std::vector<ConvexPolygon> triangulate_simple_polygon(
    std::vector<Point2> ring) {
  detail::canonicalize_ring(ring);
  if (ring.size() < 3)
    throw std::invalid_argument("degenerate polygon (zero area)");
  if (detail::signed_area_twice(ring) <= 0)
    throw std::invalid_argument("polygon must be counter-clockwise");

  std::vector<ConvexPolygon> tris;
  while (ring.size() > 3) {
    size_t n = ring.size();
    bool clipped = false;
    for (size_t i = 0; i < n; ++i) {
      const Point2& prev = ring[(i + n - 1) % n];
      const Point2& cur = ring[i];
      const Point2& next = ring[(i + 1) % n];
      if (orientation(prev, cur, next) <= 0) continue;  // reflex or flat
      ConvexPolygon ear = ConvexPolygon::from_ccw_vertices({prev, cur, next});
      bool blocked = false;
      for (size_t j = 0; j < n && !blocked; ++j) {
        if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
        if (ear.contains(ring[j])) blocked = true;
      }
      if (blocked) continue;
      tris.push_back(std::move(ear));
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped)
      throw std::invalid_argument("triangulation failed: polygon not simple");
  }
  tris.push_back(ConvexPolygon::from_ccw_vertices(std::move(ring)));
  return tris;
}

}  // namespace torex
