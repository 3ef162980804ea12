#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <stdexcept>
#include <vector>

#include "support/generators.hpp"
#include "torex/geometry.hpp"

using torex::ConvexPolygon;
using torex::Point2;
using torex::Rational;
using torex::RegionSet;

namespace {

ConvexPolygon box(const Rational& x0, const Rational& y0, const Rational& x1,
                  const Rational& y1) {
  return ConvexPolygon::from_ccw_vertices(
      {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

ConvexPolygon unit_box() { return box(0, 0, 1, 1); }

}  // namespace

TEST_CASE("areas of reference polygons are exact") {
  CHECK(unit_box().area() == 1);

  // Right triangle with both legs 1/10.
  const Rational e = Rational(1) / 10;
  ConvexPolygon tri = ConvexPolygon::from_ccw_vertices({{0, 0}, {e, 0}, {0, e}});
  CHECK(tri.area() == Rational(1) / 200);

  // Horizontal shear image of the unit square keeps area 1.
  ConvexPolygon par =
      ConvexPolygon::from_ccw_vertices({{0, 0}, {1, 0}, {2, 1}, {1, 1}});
  CHECK(par.area() == 1);
}

TEST_CASE("from_ccw_vertices validates its ring") {
  // Clockwise ring.
  CHECK_THROWS_AS(
      ConvexPolygon::from_ccw_vertices({{0, 0}, {0, 1}, {1, 1}, {1, 0}}),
      std::invalid_argument);
  // Collinear triple.
  CHECK_THROWS_AS(ConvexPolygon::from_ccw_vertices({{0, 0}, {1, 0}, {2, 0}}),
                  std::invalid_argument);
  // Too few vertices.
  CHECK_THROWS_AS(ConvexPolygon::from_ccw_vertices({{0, 0}, {1, 0}}),
                  std::invalid_argument);
  // Reflex (non-convex) ring.
  CHECK_THROWS_AS(ConvexPolygon::from_ccw_vertices(
                      {{0, 0}, {2, 0}, {2, 2}, {1, Rational(1) / 2}, {0, 2}}),
                  std::invalid_argument);
}

TEST_CASE("containment is closed (boundary points count)") {
  ConvexPolygon sq = unit_box();
  CHECK(sq.contains({0, 0}));
  CHECK(sq.contains({1, Rational(1) / 2}));
  CHECK(sq.contains({Rational(1) / 3, Rational(2) / 3}));
  CHECK_FALSE(sq.contains({Rational(3) / 2, Rational(1) / 2}));
  CHECK_FALSE(sq.contains({Rational(-1) / 100, Rational(1) / 2}));
}

TEST_CASE("convex intersection matches hand-computed overlaps") {
  ConvexPolygon sq = unit_box();

  SECTION("offset unit squares overlap in area 1/2") {
    auto piece = intersect_convex(sq, box(Rational(1) / 2, 0, Rational(3) / 2, 1));
    REQUIRE(piece.has_value());
    CHECK(piece->area() == Rational(1) / 2);
  }

  SECTION("disjoint squares produce nothing") {
    CHECK_FALSE(intersect_convex(sq, box(2, 2, 3, 3)).has_value());
    // Shared edge only: zero-area overlap collapses to empty.
    CHECK_FALSE(intersect_convex(sq, box(1, 0, 2, 1)).has_value());
  }

  SECTION("square against sheared square leaves the lower triangle") {
    ConvexPolygon par =
        ConvexPolygon::from_ccw_vertices({{0, 0}, {1, 0}, {2, 1}, {1, 1}});
    auto piece = intersect_convex(sq, par);
    REQUIRE(piece.has_value());
    CHECK(piece->area() == Rational(1) / 2);
  }
}

TEST_CASE("linear_image preserves area up to |det| and fixes orientation") {
  ConvexPolygon sq = unit_box();
  ConvexPolygon sheared = linear_image(sq, 1, 1, 0, 1);
  CHECK(sheared.area() == 1);
  ConvexPolygon scaled = linear_image(sq, 2, 0, 0, 3);
  CHECK(scaled.area() == 6);
  // Negative determinant flips orientation; result must still be valid CCW.
  ConvexPolygon mirrored = linear_image(sq, -1, 0, 0, 1);
  CHECK(mirrored.area() == 1);
  CHECK(mirrored.contains({Rational(-1) / 2, Rational(1) / 2}));
  CHECK_THROWS_AS(linear_image(sq, 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("region union measures overlapping squares correctly") {
  RegionSet a = RegionSet::single(unit_box());
  RegionSet b = RegionSet::single(box(Rational(1) / 2, 0, Rational(3) / 2, 1));

  CHECK(region_union(a, RegionSet()).measure() == 1);
  CHECK(region_union(RegionSet(), a).measure() == 1);
  CHECK(region_union(a, b).measure() == Rational(3) / 2);
  CHECK(region_union(b, a).measure() == Rational(3) / 2);
  CHECK(region_union(a, a).measure() == 1);
}

TEST_CASE("two crossing strips in the unit square have union 9/25") {
  // dist(x, Z) <= 1/10 and dist(y, Z) <= 1/10 inside [0,1]^2:
  // four rectangles of area 1/5 each minus four 1/5 x 1/5 corner overlaps.
  const Rational e = Rational(1) / 10;
  std::vector<ConvexPolygon> strips = {
      box(0, 0, e, 1), box(1 - e, 0, 1, 1),  // vertical bands
      box(0, 0, 1, e), box(0, 1 - e, 1, 1)   // horizontal bands
  };
  RegionSet acc;
  for (const auto& s : strips)
    acc = region_union(acc, RegionSet::single(s));
  CHECK(acc.measure() == Rational(9) / 25);
}

TEST_CASE("subtraction identities") {
  RegionSet a = RegionSet::single(unit_box());
  CHECK(subtract(a, RegionSet()).measure() == 1);
  CHECK(subtract(a, a).measure() == 0);
  CHECK(subtract(RegionSet(), a).empty());
  RegionSet left = RegionSet::single(box(0, 0, Rational(1) / 2, 1));
  CHECK(subtract(a, left).measure() == Rational(1) / 2);
  // Removed part no longer contains interior points of the hole.
  CHECK_FALSE(subtract(a, left).contains({Rational(1) / 4, Rational(1) / 2}));
  CHECK(subtract(a, left).contains({Rational(3) / 4, Rational(1) / 2}));
}

TEST_CASE("inclusion-exclusion holds exactly on random region pairs") {
  std::mt19937_64 eng(20240817);
  for (int trial = 0; trial < 40; ++trial) {
    RegionSet a = testgen::random_region(eng);
    RegionSet b = testgen::random_region(eng);
    const Rational lhs = region_union(a, b).measure();
    const Rational rhs =
        a.measure() + b.measure() - intersect_regions(a, b).measure();
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("symmetric difference measure") {
  RegionSet a = RegionSet::single(unit_box());
  RegionSet b = RegionSet::single(box(2, 0, 3, 1));
  CHECK(torex::symmetric_difference_measure(a, a) == 0);
  CHECK(torex::symmetric_difference_measure(a, b) == 2);
  RegionSet c = RegionSet::single(box(Rational(1) / 2, 0, Rational(3) / 2, 1));
  CHECK(torex::symmetric_difference_measure(a, c) == 1);
}

TEST_CASE("from_atoms rejects overlapping atoms but accepts shared edges") {
  ConvexPolygon sq = unit_box();
  CHECK_THROWS_AS(
      RegionSet::from_atoms({sq, box(Rational(1) / 2, 0, Rational(3) / 2, 1)}),
      std::invalid_argument);
  RegionSet ok = RegionSet::from_atoms({sq, box(1, 0, 2, 1)});
  CHECK(ok.measure() == 2);
}

TEST_CASE("triangulation handles non-convex simple polygons") {
  // L-shape of area 3.
  std::vector<Point2> ell = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  auto tris = torex::triangulate_simple_polygon(ell);
  REQUIRE(tris.size() >= 2);
  Rational total = 0;
  for (const auto& t : tris) total += t.area();
  CHECK(total == 3);
  // Pieces are pairwise interior-disjoint: the validating factory accepts them.
  RegionSet region = RegionSet::from_atoms(tris);
  CHECK(region.measure() == 3);
  CHECK(region.contains({Rational(1) / 2, Rational(3) / 2}));
  CHECK_FALSE(region.contains({Rational(3) / 2, Rational(3) / 2}));
}

TEST_CASE("triangulation rejects degenerate rings") {
  // Clockwise ring.
  CHECK_THROWS_AS(torex::triangulate_simple_polygon(
                      {{0, 0}, {0, 2}, {1, 2}, {1, 1}, {2, 1}, {2, 0}}),
                  std::invalid_argument);
  // Self-intersecting ring (positively oriented bow tie).
  CHECK_THROWS_AS(
      torex::triangulate_simple_polygon({{0, 1}, {3, 0}, {3, 3}, {0, 0}}),
      std::invalid_argument);
  // Fewer than three effective vertices.
  CHECK_THROWS_AS(torex::triangulate_simple_polygon({{0, 0}, {1, 0}, {2, 0}}),
                  std::invalid_argument);
}

TEST_CASE("convex polygons pass through triangulation unchanged in measure") {
  std::mt19937_64 eng(424242);
  for (int trial = 0; trial < 20; ++trial) {
    ConvexPolygon p = testgen::random_convex_polygon(eng);
    auto tris = torex::triangulate_simple_polygon(p.vertices());
    Rational total = 0;
    for (const auto& t : tris) total += t.area();
    REQUIRE(total == p.area());
  }
}
