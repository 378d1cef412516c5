#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "modlab/gridcases.hpp"
#include "modlab/modulus.hpp"
#include "modlab/oracle.hpp"
#include "modlab/product.hpp"
#include "modlab/surface.hpp"

using namespace modlab;

namespace {

ModulusResult solveFamily(const EndpointFamily& f, double p, double tol = 1e-7) {
  ModulusOptions opt;
  opt.p = p;
  opt.tol = tol;
  return vertexModulus(f.g, f.sources, f.targets, opt);
}

}  // namespace

TEST_CASE("working-set solver reproduces the frozen corpus") {
  const char* names[] = {"path4",    "parallel2x2",   "parallel3x2", "triangle_p3",
                         "lopsided", "twobridge_p32", "grid3x3"};
  for (const char* name : names) {
    CAPTURE(name);
    TinyCase tc = loadTinyCase(std::string(MODLAB_DATA_DIR) + "/tiny/" + std::string(name) +
                               ".json");
    ModulusOptions opt;
    opt.p = tc.p;
    opt.tol = 1e-7;
    ModulusResult res = vertexModulus(tc.g, tc.sources, tc.targets, opt);
    CHECK(res.converged);
    CHECK(res.connected);
    CHECK(res.gap <= opt.tol * 1.0001);
    CHECK(res.dualValue <= res.value * (1 + 1e-12));
    CHECK(std::abs(res.value - tc.expected) <=
          std::max(tc.expectedTol, 2 * opt.tol * tc.expected));

    // Cross-check against the independent dense method.
    auto paths = enumerateConnectingPaths(tc.g, tc.sources, tc.targets);
    double dense = densePathModulus(tc.g, paths, tc.p);
    CHECK(std::abs(res.value - dense) <= 2 * opt.tol * std::max(1.0, dense));
  }
}

TEST_CASE("chain and lattice calibrations") {
  for (int n : {1, 4, 16}) {
    CAPTURE(n);
    ModulusResult r2 = solveFamily(chainGraph(n), 2.0);
    CHECK(std::abs(r2.value - 1.0 / n) < 1e-8);
    ModulusResult r3 = solveFamily(chainGraph(n), 3.0);
    CHECK(std::abs(r3.value - std::pow(double(n), -2.0)) < 1e-8);
  }
  for (int chains : {2, 3}) {
    ModulusResult r = solveFamily(parallelChains(chains, 2), 2.0);
    CHECK(std::abs(r.value - 0.5 * chains) < 1e-7);
  }
  for (int n : {2, 4, 8}) {
    CAPTURE(n);
    ModulusResult r = solveFamily(squareGrid(n), 2.0, 1e-6);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 1.0) < 1e-5);
  }
}

TEST_CASE("value scales like factor^(dim - p) under metric scaling") {
  EndpointFamily base = chainGraph(4);
  EndpointFamily scaled = base;
  for (auto& e : scaled.g.edges) e.len *= 2.0;
  for (auto& m : scaled.g.vertexMeasure) m *= 4.0;  // two-dimensional measure
  scaled.g.buildIndex(scaled.g.n());
  ModulusResult a = solveFamily(base, 3.0, 1e-9);
  ModulusResult b = solveFamily(scaled, 3.0, 1e-9);
  double expect = std::pow(2.0, 2.0 - 3.0);
  CHECK(std::abs(b.value / a.value - expect) <= 1e-9 * expect);
}

TEST_CASE("empty family and bad input handling") {
  WeightedGraph g;
  g.edges.push_back({0, 1, 1.0});
  g.vertexMeasure = {1.0, 1.0, 1.0};
  g.buildIndex(3);
  std::vector<int> a{0}, b{2}, same{0};
  ModulusOptions opt;
  ModulusResult res = vertexModulus(g, a, b, opt);
  CHECK(!res.connected);
  CHECK(res.value == 0.0);
  CHECK(res.converged);

  CHECK_THROWS_AS(vertexModulus(g, same, same, opt), std::invalid_argument);
  CHECK_THROWS_AS(vertexModulus(g, a, std::vector<int>{}, opt), std::invalid_argument);
  ModulusOptions badP;
  badP.p = 1.0;
  CHECK_THROWS_AS(vertexModulus(g, a, b, badP), std::invalid_argument);
}

TEST_CASE("support mask restricts the family") {
  EndpointFamily sq = squareGrid(2);
  std::vector<char> support(sq.g.n(), 1);
  for (int ix = 0; ix <= 2; ++ix) support[1 * 3 + ix] = 0;  // knock out the middle row
  ModulusOptions opt;
  opt.p = 2.0;
  opt.tol = 1e-7;
  ModulusResult masked = vertexModulus(sq.g, sq.sources, sq.targets, opt, &support);
  CHECK(masked.converged);
  // Two disjoint boundary rows, each of modulus 1/4.
  CHECK(std::abs(masked.value - 0.5) < 1e-6);
  ModulusResult open = vertexModulus(sq.g, sq.sources, sq.targets, opt);
  CHECK(open.value > masked.value);
}

TEST_CASE("solver runs on a product-space family") {
  auto mesh = buildSurface(1, 0.125);
  ProductMesh pm = buildProduct(mesh, 0.25);
  std::vector<int> sources = pm.continuumE();
  std::vector<int> targets;
  for (int v = 0; v < static_cast<int>(mesh->verts.size()); ++v)
    if (mesh->verts[v].flags & kVertexBoundary) targets.push_back(pm.id(v, pm.layers / 2));
  REQUIRE(!targets.empty());
  ModulusOptions opt;
  opt.p = 3.0;
  opt.tol = 5e-3;
  ModulusResult res = vertexModulus(pm.g, sources, targets, opt);
  CHECK(res.connected);
  CHECK(res.converged);
  CHECK(res.value > 0);
  CHECK(res.dualValue > 0);
  CHECK(res.gap <= opt.tol * 1.0001);
}
