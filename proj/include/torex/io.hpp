#pragma once

#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torex/geometry.hpp"
#include "torex/rational.hpp"

namespace torex {

/// Malformed input data (polygon or vertex files). Kept distinct from
/// usage errors so the CLI can map it to its own exit status.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Polygon text: '#' starts a comment, blank lines are skipped, and every
/// remaining line is one polygon given as an even list of whitespace-
/// separated rational coordinates x1 y1 x2 y2 ... (each "p/q" or an
/// integer), vertices in counter-clockwise order. Non-convex simple
/// polygons are triangulated on the way in; overlap between polygons is
/// tolerated (the union is taken).
inline RegionSet parse_polygon_text(std::istream& in) {
  RegionSet acc;
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tokens{std::istream_iterator<std::string>(ss),
                                    std::istream_iterator<std::string>()};
    if (tokens.empty()) continue;
    if (tokens.size() % 2 != 0)
      throw DataError(where + ": odd number of coordinates");
    if (tokens.size() < 6)
      throw DataError(where + ": a polygon needs at least 3 vertices");
    std::vector<Point2> verts;
    for (std::size_t i = 0; i < tokens.size(); i += 2) {
      auto x = parse_rational(tokens[i]);
      auto y = parse_rational(tokens[i + 1]);
      if (!x || !y)
        throw DataError(where + ": bad rational near '" + tokens[i] + " " +
                        tokens[i + 1] + "'");
      verts.push_back({*x, *y});
    }
    std::vector<ConvexPolygon> atoms;
    try {
      atoms.push_back(ConvexPolygon::from_ccw_vertices(verts));
    } catch (const std::invalid_argument&) {
      try {
        atoms = triangulate_simple_polygon(verts);
      } catch (const std::invalid_argument& e) {
        throw DataError(where + ": " + e.what());
      }
    }
    acc = region_union(acc, RegionSet::from_disjoint_atoms(std::move(atoms)));
    any = true;
  }
  if (!any) throw DataError("no polygons in input");
  return acc;
}

inline RegionSet load_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open polygon file: " + path);
  return parse_polygon_text(in);
}

/// Vertex text: '#' comments and blank lines skipped; each line is one
/// vertex "x y" with integer entries. Range checks against the modulus
/// happen later, in VertexSet validation.
inline std::vector<std::pair<long long, long long>> parse_vertex_text(
    std::istream& in) {
  std::vector<std::pair<long long, long long>> out;
  std::string line;
  int lineno = 0;
  auto parse_int = [](const std::string& tok, long long& value) {
    auto r = parse_rational(tok);
    if (!r || rat_den(*r) != 1) return false;
    if (rat_num(*r) > std::numeric_limits<long long>::max() ||
        rat_num(*r) < std::numeric_limits<long long>::min())
      return false;
    value = rat_num(*r).convert_to<long long>();
    return true;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tokens{std::istream_iterator<std::string>(ss),
                                    std::istream_iterator<std::string>()};
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw DataError(where + ": expected exactly two integers");
    long long x = 0, y = 0;
    if (!parse_int(tokens[0], x) || !parse_int(tokens[1], y))
      throw DataError(where + ": bad integer near '" + tokens[0] + " " +
                      tokens[1] + "'");
    out.push_back({x, y});
  }
  if (out.empty()) throw DataError("no vertices in input");
  return out;
}

inline std::vector<std::pair<long long, long long>> load_vertex_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open vertex file: " + path);
  return parse_vertex_text(in);
}

}  // namespace torex
