#pragma once

// Umbrella header: exact rational polygon algebra, torus shear actions,
// the strip constructions with closed forms, the mod-p shear graph, and
// the sampling oracle.

#include "torex/constructions.hpp"
#include "torex/geometry.hpp"
#include "torex/io.hpp"
#include "torex/modular_graph.hpp"
#include "torex/monte_carlo.hpp"
#include "torex/rational.hpp"
#include "torex/report.hpp"
#include "torex/torus.hpp"
