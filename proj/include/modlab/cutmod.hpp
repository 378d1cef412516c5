#pragma once

#include <span>
#include <vector>

#include "modlab/graph.hpp"

namespace modlab {

// Modulus of the family of edge cuts separating two vertex sets, the discrete
// stand-in for separating surfaces.  Densities live on edges that carry a
// positive dual face area a(e); an edge then contributes a(e) rho(e) when it
// crosses a cut and weighs nu(e) = a(e) len(e) in the energy:
//
//   minimize   sum_e nu(e) rho(e)^q
//   subject to sum_{e in C} a(e) rho(e) >= 1   for every separating cut C.
//
// Edges of zero dual area (metric shortcuts) take no part in either side.
// Internally the solver works on the conjugate program over connecting paths,
// which blocks the cut family, and converts its certified density back with a
// single max flow; see the implementation notes in cutmod.cpp.
struct CutModulusOptions {
  double q = 1.5;
  double tol = 1e-4;
  int maxOuter = 2000;
};

struct CutModulusResult {
  double value = 0;      // certified admissible energy (upper bound)
  double dualValue = 0;  // dual feasible lower bound
  double gap = 0;
  bool separable = true;  // false when the sets are already disconnected
  bool converged = false;
  int constraints = 0;
  int outerIters = 0;
  std::vector<double> rho;  // per edge, zero off the dual-area support
};

CutModulusResult cutModulus(const WeightedGraph& g, std::span<const int> sources,
                            std::span<const int> targets, const CutModulusOptions& opt);

}  // namespace modlab
