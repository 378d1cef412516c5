#pragma once

#include <limits>
#include <span>
#include <vector>

#include "modlab/graph.hpp"
#include "modlab/product.hpp"

namespace modlab {

constexpr double kInfDist = std::numeric_limits<double>::infinity();

// Multi-source shortest paths along edge lengths.  Vertices outside `allowed`
// (when given) are impassable; `cutoff` prunes anything strictly beyond it;
// `stopAt` ends the search once that vertex is settled.
struct Dijkstra {
  std::vector<double> dist;
  std::vector<int> prev;

  void run(const WeightedGraph& g, std::span<const int> sources, double cutoff = kInfDist,
           const std::vector<char>* allowed = nullptr, int stopAt = -1);
  std::vector<int> pathTo(int target) const;  // settled target -> source order
};

// Symmetric by construction: always expands from min(a, b).
double pairDistance(const WeightedGraph& g, int a, int b);

std::vector<int> pathBetween(const WeightedGraph& g, int a, int b);

double pathLength(const WeightedGraph& g, const std::vector<int>& path);

// Largest pairwise distance within a set.  Exhaustive for small sets, double
// sweep (exact on geodesically convex chains) otherwise.
double setDiameter(const WeightedGraph& g, const std::vector<int>& set);

// dist(E,F) / min(diam E, diam F).  Both sets must be nondegenerate continua
// (at least two vertices, positive diameter); throws std::invalid_argument
// otherwise.
struct RelativeDistance {
  double dist = 0;
  double diamE = 0, diamF = 0;
  double delta = 0;
};

RelativeDistance relativeDistance(const WeightedGraph& g, const std::vector<int>& E,
                                  const std::vector<int>& F);

// Area (volume) of a metric ball estimated from whole cells.  Inner counts
// cells entirely inside, Outer cells that touch, Mid cells whose average
// corner distance is within r.
enum class BallRule { Inner, Mid, Outer };

double ballMeasureY(const SurfaceMesh& mesh, int center, double r, BallRule rule);
double ballMeasureX(const ProductMesh& pm, int center, double r, BallRule rule);

// Euclidean unit-ball volumes and the codimension-one isoperimetric ratio
// used as the degeneracy threshold for separating-surface energies.
double unitBallVolume(int k);
double surfaceComparisonBound(int n);  // 2 v_n / v_{n-1}

}  // namespace modlab
