// Witness paths for the two linear-local-connectivity conditions around an
// obstacle ball B(x, r):
//   * joining points outside the ball while keeping a minimum distance from x
//     (constrained shortest path in the complement of a smaller ball);
//   * joining points inside the ball through the center (two geodesic legs,
//     which stay within max(d(x,y), d(x,z)) of x in a length metric).
#pragma once

#include <vector>

#include "modlab/metric.hpp"

namespace modlab {

struct LlcWitness {
  bool found = false;
  std::vector<int> path;   // y .. z
  double clearance = 0;    // min over the path of centerDist (avoid witness)
  double containment = 0;  // max over the path of centerDist (through witness)
};

// Shortest y-z path over vertices with centerDist >= keepOut (no restriction
// when keepOut <= 0).  clearance is recomputed from the returned path, never
// assumed from the mask.
LlcWitness connectAvoiding(const WeightedGraph& g, const std::vector<double>& centerDist,
                           double keepOut, int y, int z);

// y -> x -> z along shortest-path tree branches of a finished search from x.
// Requires both endpoints settled.
LlcWitness connectThrough(const WeightedGraph& g, const Dijkstra& fromX, int y, int z);

}  // namespace modlab
