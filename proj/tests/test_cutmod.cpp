#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "modlab/cutmod.hpp"
#include "modlab/gridcases.hpp"
#include "modlab/modulus.hpp"
#include "modlab/oracle.hpp"
#include "modlab/product.hpp"
#include "modlab/surface.hpp"

using namespace modlab;

namespace {

CutModulusResult solveCuts(const EndpointFamily& f, double q, double tol = 1e-6) {
  CutModulusOptions opt;
  opt.q = q;
  opt.tol = tol;
  return cutModulus(f.g, f.sources, f.targets, opt);
}

// Every inclusion-minimal edge subset whose removal disconnects the sets, as
// (edge, area) rows.  Exponential scan, tiny graphs only.
std::vector<std::vector<std::pair<int, double>>> minimalCuts(const WeightedGraph& g,
                                                             const std::vector<int>& sources,
                                                             const std::vector<int>& targets) {
  const int E = static_cast<int>(g.edges.size());
  REQUIRE(E <= 16);
  auto separates = [&](unsigned mask) {
    std::vector<char> vis(g.n(), 0);
    std::queue<int> bfs;
    for (int s : sources) {
      vis[s] = 1;
      bfs.push(s);
    }
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (int e = 0; e < E; ++e) {
        if (mask & (1u << e)) continue;
        int w = -1;
        if (g.edges[e].a == v) w = g.edges[e].b;
        if (g.edges[e].b == v) w = g.edges[e].a;
        if (w >= 0 && !vis[w]) {
          vis[w] = 1;
          bfs.push(w);
        }
      }
    }
    for (int t : targets)
      if (vis[t]) return false;
    return true;
  };
  std::vector<std::vector<std::pair<int, double>>> rows;
  for (unsigned mask = 1; mask < (1u << E); ++mask) {
    if (!separates(mask)) continue;
    bool minimal = true;
    for (int e = 0; e < E && minimal; ++e)
      if ((mask & (1u << e)) && separates(mask & ~(1u << e))) minimal = false;
    if (!minimal) continue;
    std::vector<std::pair<int, double>> row;
    for (int e = 0; e < E; ++e)
      if (mask & (1u << e)) row.push_back({e, g.edgeArea[e]});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("chain cuts: every edge is its own bottleneck") {
  EndpointFamily f = chainGraph(3);
  for (double q : {1.5, 2.0, 3.0}) {
    CAPTURE(q);
    CutModulusResult res = solveCuts(f, q);
    CHECK(res.converged);
    CHECK(res.separable);
    CHECK(std::abs(res.value - 3.0) < 1e-5);
    CHECK(res.dualValue <= res.value * (1 + 1e-12));
  }
}

TEST_CASE("unit square, top-bottom cuts have modulus one at q = 2") {
  for (int n : {2, 4, 8}) {
    CAPTURE(n);
    CutModulusResult res = solveCuts(squareGridTopBottom(n), 2.0);
    CHECK(res.converged);
    CHECK(std::abs(res.value - 1.0) < 1e-5);
  }
  // Conjugate-family agreement on the square: left-right paths and
  // top-bottom cuts both sit at exactly one for the self-dual exponent.
  EndpointFamily lr = squareGrid(4);
  ModulusOptions popt;
  popt.p = 2.0;
  popt.tol = 1e-6;
  ModulusResult paths = vertexModulus(lr.g, lr.sources, lr.targets, popt);
  CutModulusResult cuts = solveCuts(squareGridTopBottom(4), 2.0);
  CHECK(std::abs(paths.value - cuts.value) < 1e-5);
}

TEST_CASE("solver matches the exhaustive minimal-cut program") {
  // Uneven two-edge chain: closed form 1 + (2 * 0.5) * (1/2)^2 = 1.25.
  WeightedGraph g;
  g.edges.push_back({0, 1, 1.0});
  g.edges.push_back({1, 2, 0.5});
  g.vertexMeasure = {1.0, 1.0, 1.0};
  g.edgeArea = {1.0, 2.0};
  g.buildIndex(3);
  std::vector<int> a{0}, b{2};
  auto rows = minimalCuts(g, a, b);
  CHECK(rows.size() == 2);
  std::vector<double> nu(g.edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e) nu[e] = g.edgeArea[e] * g.edges[e].len;
  double dense = denseRowProgram(nu, rows, 2.0);
  CHECK(std::abs(dense - 1.25) < 1e-9);
  CutModulusOptions opt;
  opt.q = 2.0;
  opt.tol = 1e-7;
  CutModulusResult res = cutModulus(g, a, b, opt);
  CHECK(res.converged);
  CHECK(std::abs(res.value - dense) < 1e-6);

  // Small lattice against the exhaustive row list, staircase cuts included.
  EndpointFamily sq = squareGridTopBottom(2);
  auto sqRows = minimalCuts(sq.g, sq.sources, sq.targets);
  CHECK(sqRows.size() > 3);  // more than just the three straight rows
  std::vector<double> sqNu(sq.g.edges.size());
  for (size_t e = 0; e < sq.g.edges.size(); ++e)
    sqNu[e] = sq.g.edgeArea[e] * sq.g.edges[e].len;
  double sqDense = denseRowProgram(sqNu, sqRows, 2.0);
  CutModulusResult sqRes = solveCuts(sq, 2.0, 1e-7);
  CHECK(std::abs(sqRes.value - sqDense) < 1e-5);
  CHECK(std::abs(sqDense - 1.0) < 1e-9);
}

TEST_CASE("disconnected sets make the cut family degenerate") {
  WeightedGraph g;
  g.edges.push_back({0, 1, 1.0});
  g.vertexMeasure = {1.0, 1.0, 1.0};
  g.edgeArea = {1.0};
  g.buildIndex(3);
  std::vector<int> a{0}, b{2};
  CutModulusOptions opt;
  CutModulusResult res = cutModulus(g, a, b, opt);
  CHECK(!res.separable);
  CHECK(std::isinf(res.value));
}

TEST_CASE("cut solver runs on a product space and ignores shortcut edges") {
  auto mesh = buildSurface(0, 0.125);
  ProductMesh pm = buildProduct(mesh, 0.5);
  std::vector<int> sources = pm.continuumE();
  std::vector<int> targets;
  for (int v = 0; v < static_cast<int>(mesh->verts.size()); ++v)
    if (mesh->verts[v].flags & kVertexBoundary)
      for (int l = 0; l < pm.layers; ++l) targets.push_back(pm.id(v, l));
  CutModulusOptions opt;
  opt.q = 1.5;
  opt.tol = 5e-3;
  CutModulusResult res = cutModulus(pm.g, sources, targets, opt);
  CHECK(res.converged);
  CHECK(res.separable);
  CHECK(res.value > 0);
  CHECK(res.dualValue > 0);
  for (size_t e = 0; e < pm.g.edges.size(); ++e)
    if (!(pm.g.edgeArea[e] > 0)) CHECK(res.rho[e] == 0.0);
}
