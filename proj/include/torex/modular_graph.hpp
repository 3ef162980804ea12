#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torex/rational.hpp"
#include "torex/torus.hpp"

namespace torex {

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Vertex = std::pair<int, int>;

/// Finite subset of Z_p x Z_p with the origin excluded; members are stored
/// reduced into [0,p) x [0,p).
class VertexSet {
 public:
  static VertexSet from_members(int p, const std::vector<Vertex>& members) {
    if (p < 2) throw std::invalid_argument("modulus must be at least 2");
    VertexSet s;
    s.p_ = p;
    for (const Vertex& v : members) {
      if (v.first < 0 || v.first >= p || v.second < 0 || v.second >= p)
        throw std::invalid_argument("vertex (" + std::to_string(v.first) +
                                    "," + std::to_string(v.second) +
                                    ") is not reduced mod " +
                                    std::to_string(p));
      if (v.first == 0 && v.second == 0)
        throw std::invalid_argument("the origin (0,0) is not a vertex");
      s.members_.insert(v);
    }
    return s;
  }

  int modulus() const { return p_; }
  const std::set<Vertex>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Vertex& v) const { return members_.count(v) != 0; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.p_ == b.p_ && a.members_ == b.members_;
  }

 private:
  int p_ = 2;
  std::set<Vertex> members_;
};

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument("vertex sets live over different moduli");
  std::vector<Vertex> all(a.members().begin(), a.members().end());
  all.insert(all.end(), b.members().begin(), b.members().end());
  return VertexSet::from_members(a.modulus(), all);
}

/// Which images define the closed neighborhood: forward shears plus their
/// inverses (undirected graph), or forward shears only (directed graph).
enum class Mode { undirected, directed };

/// The shear-action graph on Z_p^2 minus the origin, p an odd prime. The
/// shears fix the origin and act invertibly, so the vertex set is preserved.
class ModularGraph {
 public:
  explicit ModularGraph(int p, Mode mode = Mode::undirected)
      : p_(p), mode_(mode) {
    if (p < 3 || !is_prime(p))
      throw std::invalid_argument("modulus must be an odd prime (p >= 3)");
  }

  int p() const { return p_; }
  Mode mode() const { return mode_; }
  long long vertex_count() const {
    return static_cast<long long>(p_) * p_ - 1;
  }

  std::vector<UnimodularMap> action_maps() const {
    std::vector<UnimodularMap> ms{horizontal_shear(), vertical_shear()};
    if (mode_ == Mode::undirected) {
      ms.push_back(horizontal_shear().inverse());
      ms.push_back(vertical_shear().inverse());
    }
    return ms;
  }

 private:
  int p_;
  Mode mode_;
};

inline Vertex apply_mod_p(const UnimodularMap& m, const Vertex& v, int p) {
  auto reduce = [p](long long t) {
    return static_cast<int>(((t % p) + p) % p);
  };
  return {reduce(m.a() * v.first + m.b() * v.second),
          reduce(m.c() * v.first + m.d() * v.second)};
}

inline VertexSet image_set(const ModularGraph& g, const UnimodularMap& m,
                           const VertexSet& a) {
  if (a.modulus() != g.p())
    throw std::invalid_argument("vertex set modulus does not match graph");
  std::vector<Vertex> out;
  out.reserve(a.size());
  for (const Vertex& v : a.members()) out.push_back(apply_mod_p(m, v, g.p()));
  return VertexSet::from_members(g.p(), out);
}

/// A together with every generator image of A.
inline VertexSet closed_neighborhood(const ModularGraph& g,
                                     const VertexSet& a) {
  if (a.modulus() != g.p())
    throw std::invalid_argument("vertex set modulus does not match graph");
  std::vector<Vertex> out(a.members().begin(), a.members().end());
  for (const UnimodularMap& m : g.action_maps())
    for (const Vertex& v : a.members())
      out.push_back(apply_mod_p(m, v, g.p()));
  return VertexSet::from_members(g.p(), out);
}

inline Rational vertex_expansion_ratio(const ModularGraph& g,
                                       const VertexSet& a) {
  if (a.empty())
    throw std::domain_error("expansion ratio undefined for the empty set");
  return Rational(Integer(closed_neighborhood(g, a).size())) /
         Integer(a.size());
}

/// The 2(p-1) axis points: (i,0) and (0,i) for i = 1..p-1.
inline VertexSet build_cross_set(const ModularGraph& g) {
  std::vector<Vertex> vs;
  for (int i = 1; i < g.p(); ++i) {
    vs.push_back({i, 0});
    vs.push_back({0, i});
  }
  return VertexSet::from_members(g.p(), vs);
}

/// The p-1 points with x + y = 0 mod p: (i, p-i).
inline VertexSet build_antidiag_set(const ModularGraph& g) {
  std::vector<Vertex> vs;
  for (int i = 1; i < g.p(); ++i) vs.push_back({i, g.p() - i});
  return VertexSet::from_members(g.p(), vs);
}

/// The p-1 points with x = y: (i, i).
inline VertexSet build_diag_set(const ModularGraph& g) {
  std::vector<Vertex> vs;
  for (int i = 1; i < g.p(); ++i) vs.push_back({i, i});
  return VertexSet::from_members(g.p(), vs);
}

inline VertexSet all_vertices(const ModularGraph& g) {
  std::vector<Vertex> vs;
  vs.reserve(static_cast<std::size_t>(g.vertex_count()));
  for (int x = 0; x < g.p(); ++x)
    for (int y = 0; y < g.p(); ++y)
      if (x != 0 || y != 0) vs.push_back({x, y});
  return VertexSet::from_members(g.p(), vs);
}

/// True iff the undirected shear graph on Z_p^2 minus the origin is
/// connected (breadth-first traversal; mode of g is ignored on purpose).
inline bool connectivity_check(const ModularGraph& g) {
  const int p = g.p();
  const std::vector<UnimodularMap> maps{
      horizontal_shear(), vertical_shear(), horizontal_shear().inverse(),
      vertical_shear().inverse()};
  std::vector<char> seen(static_cast<std::size_t>(p) * p, 0);
  auto id = [p](const Vertex& v) {
    return static_cast<std::size_t>(v.first) * p + v.second;
  };
  std::queue<Vertex> frontier;
  frontier.push({1, 0});
  seen[id({1, 0})] = 1;
  long long reached = 1;
  while (!frontier.empty()) {
    Vertex v = frontier.front();
    frontier.pop();
    for (const UnimodularMap& m : maps) {
      Vertex w = apply_mod_p(m, v, p);
      if (!seen[id(w)]) {
        seen[id(w)] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == g.vertex_count();
}

struct MinRatioResult {
  Rational ratio;
  VertexSet witness;
  bool exact;  // full enumeration, vs seeded random sampling under budget
};

namespace detail {

/// C(n,k) saturated at cap+1 so callers can test feasibility without
/// overflow.
inline unsigned long long subset_count_capped(unsigned long long n,
                                              unsigned long long k,
                                              unsigned long long cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (unsigned long long i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // exact: C(n-k+i, i) is integral
    if (c > cap) return cap + 1;
  }
  return static_cast<unsigned long long>(c);
}

}  // namespace detail

/// Minimum closed-neighborhood ratio over k-subsets: exhaustive when the
/// subset count fits the work budget, otherwise seeded random sampling of
/// `budget` subsets (flagged via MinRatioResult::exact = false).
inline MinRatioResult exhaustive_min_ratio(const ModularGraph& g, long long k,
                                           unsigned long long budget = 2000000,
                                           std::uint64_t seed = 0) {
  const long long n = g.vertex_count();
  if (k < 1 || k > n)
    throw std::invalid_argument("subset size must lie in [1, " +
                                std::to_string(n) + "] for p = " +
                                std::to_string(g.p()));
  const int p = g.p();

  // Flat ids and generator permutation tables for fast neighborhood counts.
  const VertexSet everything = all_vertices(g);
  std::vector<Vertex> verts(everything.members().begin(),
                            everything.members().end());
  std::vector<int> id_of(static_cast<std::size_t>(p) * p, -1);
  for (std::size_t i = 0; i < verts.size(); ++i)
    id_of[static_cast<std::size_t>(verts[i].first) * p + verts[i].second] =
        static_cast<int>(i);
  std::vector<std::vector<int>> perms;
  for (const UnimodularMap& m : g.action_maps()) {
    std::vector<int> perm(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      Vertex w = apply_mod_p(m, verts[i], p);
      perm[i] = id_of[static_cast<std::size_t>(w.first) * p + w.second];
    }
    perms.push_back(std::move(perm));
  }

  std::vector<std::uint32_t> stamp(verts.size(), 0);
  std::uint32_t generation = 0;
  auto neighborhood_size = [&](const std::vector<int>& subset) {
    ++generation;
    std::size_t count = 0;
    auto touch = [&](int v) {
      if (stamp[static_cast<std::size_t>(v)] != generation) {
        stamp[static_cast<std::size_t>(v)] = generation;
        ++count;
      }
    };
    for (int v : subset) {
      touch(v);
      for (const auto& perm : perms) touch(perm[static_cast<std::size_t>(v)]);
    }
    return count;
  };

  std::size_t best = verts.size() + 1;
  std::vector<int> best_subset;
  auto consider = [&](const std::vector<int>& subset) {
    std::size_t s = neighborhood_size(subset);
    if (s < best) {
      best = s;
      best_subset = subset;
    }
  };

  const bool exact =
      detail::subset_count_capped(static_cast<unsigned long long>(n),
                                  static_cast<unsigned long long>(k),
                                  budget) <= budget;
  if (exact) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (long long i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] =
        static_cast<int>(i);
    while (true) {
      consider(idx);
      long long i = k - 1;
      while (i >= 0 &&
             idx[static_cast<std::size_t>(i)] == n - k + i)
        --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (long long j = i + 1; j < k; ++j)
        idx[static_cast<std::size_t>(j)] =
            idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  } else {
    std::mt19937_64 eng(seed);
    std::vector<int> pool(verts.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);
    std::vector<int> subset(static_cast<std::size_t>(k));
    for (unsigned long long trial = 0; trial < budget; ++trial) {
      // Partial Fisher-Yates: the first k entries become a uniform k-subset.
      for (long long i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(
            static_cast<std::size_t>(i), pool.size() - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[pick(eng)]);
        subset[static_cast<std::size_t>(i)] =
            pool[static_cast<std::size_t>(i)];
      }
      std::sort(subset.begin(), subset.end());
      consider(subset);
    }
  }

  std::vector<Vertex> witness;
  witness.reserve(best_subset.size());
  for (int i : best_subset) witness.push_back(verts[static_cast<std::size_t>(i)]);
  return MinRatioResult{
      Rational(Integer(best)) / Integer(static_cast<unsigned long long>(k)),
      VertexSet::from_members(p, witness), exact};
}

}  // namespace torex
