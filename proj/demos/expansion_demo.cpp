// Walkthrough of the library: exact strip constructions on the torus, their
// expansion under the shear generators, the same quantities re-estimated by
// the sampling oracle, and the discrete mod-p analogue.

#include <iostream>

#include "torex/torex.hpp"

using namespace torex;

int main() {
  const Epsilon eps{Rational(1) / 12};
  const Rational& e = eps.value();
  std::cout << "epsilon = " << to_fraction_string(e) << "\n\n";

  // The cross (vertical + horizontal strip) and its closed-form measure.
  TorusRegion cross = build_cross(eps);
  std::cout << "cross measure          = " << to_fraction_string(cross.measure())
            << "  (4e-4e^2 = "
            << to_fraction_string(cross_measure_form(e)) << ")\n";

  // Expanding by all four shears only adds the two diagonal strips, so the
  // union stays well under twice the measure.
  GeneratorSet sym = GeneratorSet::symmetric_shears();
  TorusRegion grown = expansion_union(sym, cross);
  std::cout << "expansion union        = " << to_fraction_string(grown.measure())
            << "  (8e-16e^2 = "
            << to_fraction_string(four_strip_union_form(e)) << ")\n";
  std::cout << "expansion ratio        = "
            << to_fraction_string(expansion_ratio(sym, cross))
            << "  (< 2)\n\n";

  // The sampling oracle sees the same numbers without any polygon code.
  ImplicitSet cross_implicit = implicit_cross(e);
  EstimateResult est = estimate_measure(
      implicit_expansion_union(sym, cross_implicit), 200000, 7);
  std::cout << "oracle union estimate  = " << est.estimate << " (n="
            << est.sample_count << ", se=" << est.std_error << ")\n\n";

  // Discrete analogue: the axis cross in Z_13^2 minus the origin doubles
  // exactly under the undirected shear action.
  ModularGraph g(13);
  VertexSet a = build_cross_set(g);
  std::cout << "mod-13 cross: |A| = " << a.size() << ", |A u N(A)| = "
            << closed_neighborhood(g, a).size() << ", ratio = "
            << to_fraction_string(vertex_expansion_ratio(g, a)) << "\n";
  return 0;
}
