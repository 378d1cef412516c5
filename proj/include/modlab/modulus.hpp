#pragma once

#include <span>
#include <vector>

#include "modlab/graph.hpp"

namespace modlab {

// Conformal p-modulus of the family of paths connecting two vertex sets,
// with densities living on vertices weighted by the vertex measure:
//
//   minimize   sum_v mu_v rho_v^p
//   subject to sum over path steps of (rho_a + rho_b)/2 * len >= 1
//              for every connecting path.
//
// Solved by cutting planes: a working set of path constraints is optimized in
// the dual by cyclic coordinate ascent (each multiplier has a monotone
// one-dimensional optimality equation), and the most violated path under the
// current density is found by a shortest-path pass, which simultaneously
// certifies an admissible rescaling.  The reported interval is
// [dualValue, value] with value admissible for the full family.
struct ModulusOptions {
  double p = 3;
  double tol = 1e-4;   // relative certified gap target
  int maxOuter = 2000;
};

struct ModulusResult {
  double value = 0;      // certified admissible energy (upper bound)
  double dualValue = 0;  // dual feasible lower bound
  double gap = 0;        // (value - dualValue) / value
  bool connected = true;
  bool converged = false;
  int constraints = 0;
  int outerIters = 0;
  std::vector<double> rho;  // optimal density, already admissibly rescaled
};

ModulusResult vertexModulus(const WeightedGraph& g, std::span<const int> sources,
                            std::span<const int> targets, const ModulusOptions& opt,
                            const std::vector<char>* support = nullptr);

}  // namespace modlab
