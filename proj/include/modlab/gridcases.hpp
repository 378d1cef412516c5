#pragma once

#include <vector>

#include "modlab/graph.hpp"

namespace modlab {

// Calibration instances with closed-form modulus values, used to pin the
// solvers before they run on the mesh-derived graphs.
struct EndpointFamily {
  WeightedGraph g;
  std::vector<int> sources, targets;
};

// Chain of `edges` unit-length segments with one-dimensional control volumes
// (half weight at the two ends).  Path modulus at p = 2 is 1/edges.
EndpointFamily chainGraph(int edges, double edgeLen = 1.0);

// Disjoint union of identical chains; moduli add.
EndpointFamily parallelChains(int chains, int edgesPerChain);

// Unit square sampled on an (n+1) x (n+1) lattice, connecting the left and
// right columns.  Control volumes and dual face areas come from the tensor
// grid, so the p = 2 path modulus and the q = 2 top-bottom cut modulus are
// both exactly 1 at every n.
EndpointFamily squareGrid(int cellsPerSide);

// Top and bottom rows of the same lattice, for the cut calibration.
EndpointFamily squareGridTopBottom(int cellsPerSide);

}  // namespace modlab
