#pragma once

#include <string>
#include <vector>

#include "modlab/graph.hpp"

namespace modlab {

// Small hand-frozen test instance loaded from JSON.  Used to pin the modulus
// solver against an independent dense method on graphs tiny enough to
// enumerate every connecting path.
struct TinyCase {
  std::string name;
  WeightedGraph g;
  std::vector<int> sources, targets;
  double p = 2;
  bool hasExpected = false;
  double expected = 0;
  double expectedTol = 1e-9;
};

TinyCase loadTinyCase(const std::string& jsonPath);

// All minimal simple paths from a source to the first touched target, as
// vertex sequences.  Throws if the graph is too large to enumerate.
std::vector<std::vector<int>> enumerateConnectingPaths(const WeightedGraph& g,
                                                       const std::vector<int>& sources,
                                                       const std::vector<int>& targets,
                                                       size_t cap = 200000);

// Dense interior-point solve of  min sum w_i x_i^p  s.t. every row
// sum_j c_j x_{i_j} >= 1.  Deliberately independent of the working-set
// solvers: builds the full constraint matrix and runs barrier Newton steps
// with a direct Cholesky factorization.  Rows are (item, coefficient) lists.
double denseRowProgram(const std::vector<double>& weights,
                       const std::vector<std::vector<std::pair<int, double>>>& rows, double p);

// The path-family program over an explicit path list, via denseRowProgram.
double densePathModulus(const WeightedGraph& g, const std::vector<std::vector<int>>& paths,
                        double p);

}  // namespace modlab
