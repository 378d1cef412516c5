#include "doctest.h"
#include "modlab/metric.hpp"
#include "modlab/product.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace modlab;

TEST_CASE("product layout, layer heights, and measures") {
  auto base = buildSurface(1, 1.0 / 8);
  auto pm = buildProduct(base, 1.0 / 4);
  const int nb = static_cast<int>(base->verts.size());

  CHECK(pm.layers == 15);
  CHECK(pm.g.n() == nb * 15);
  CHECK(pm.g.edges.size() == 15 * base->edges.size() + 14 * static_cast<std::size_t>(nb));
  CHECK(pm.zOf(0) == -2.0 + 1.0 / 4);
  CHECK(pm.zOf(7) == 0.0);
  CHECK(pm.zOf(14) == 2.0 - 1.0 / 4);

  double total = 0;
  for (double m : pm.g.vertexMeasure) total += m;
  CHECK(total == doctest::Approx(base->totalArea * (4.0 - 1.0 / 4)).epsilon(1e-12));
  for (int l = 0; l < pm.layers; l += 7)
    CHECK(pm.g.vertexMeasure[pm.id(base->cusp, l)] == base->dualArea[base->cusp] * (1.0 / 4));

  CHECK_THROWS_AS(buildProduct(base, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(buildProduct(base, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(buildProduct(base, 1.0), std::invalid_argument);
}

TEST_CASE("singular segment sits on the cusp line between heights -1 and 1") {
  auto base = buildSurface(1, 1.0 / 8);
  auto pm = buildProduct(base, 1.0 / 4);
  const auto E = pm.continuumE();
  CHECK(E.size() == 2 * 4 + 1);
  CHECK(pm.zOf(pm.layerOf(E.front())) == -1.0);
  CHECK(pm.zOf(pm.layerOf(E.back())) == 1.0);
  for (int v : E) CHECK(pm.baseOf(v) == base->cusp);

  // the segment is vertical, so its diameter is exactly its height span
  CHECK(pairDistance(pm.g, E.front(), E.back()) == 2.0);
  CHECK(setDiameter(pm.g, E) == 2.0);
  for (std::size_t k = 0; k + 1 < E.size(); ++k)
    CHECK(pairDistance(pm.g, E[k], E[k + 1]) == 1.0 / 4);
}

TEST_CASE("collapsing the segment preserves ids and measure") {
  auto base = buildSurface(1, 1.0 / 8);
  auto pm = buildProduct(base, 1.0 / 4);
  const auto E = pm.continuumE();
  auto q = collapseContinuum(pm);

  CHECK(q.g.n() == pm.g.n());
  CHECK(q.classId == E.front());
  for (int v : E) CHECK(q.toQuotient[v] == q.classId);

  double eMass = 0;
  for (int v : E) eMass += pm.g.vertexMeasure[v];
  CHECK(q.g.vertexMeasure[q.classId] == doctest::Approx(eMass).epsilon(1e-14));
  for (std::size_t k = 1; k < E.size(); ++k) {
    CHECK(q.g.vertexMeasure[E[k]] == 0.0);
    CHECK(q.g.adjOff[E[k] + 1] == q.g.adjOff[E[k]]);  // tombstone
  }

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick(0, pm.g.n() - 1);
  std::vector<char> isE(pm.g.n(), 0);
  for (int v : E) isE[v] = 1;
  for (int trial = 0; trial < 12; ++trial) {
    int x = pick(rng);
    if (isE[x]) continue;
    CHECK(q.toQuotient[x] == x);
    // collapsing can only shorten distances
    double dq = pairDistance(q.g, x, q.classId);
    Dijkstra d;
    d.run(pm.g, E);
    CHECK(dq <= d.dist[x] + 1e-12);
    CHECK(dq > 0);
  }

  // far from the segment the quotient metric is unchanged: both points deep in
  // a pillowcase at heights near the open ends
  int face = -1;
  for (int v = 0; v < static_cast<int>(base->verts.size()); ++v)
    if (base->verts[v].chart.kind == ChartKind::PillowTop && base->verts[v].u == 0.25 &&
        base->verts[v].v == 0.25)
      face = v;
  REQUIRE(face >= 0);
  const int a = pm.id(face, 0), b = pm.id(face, 1);
  CHECK(pairDistance(q.g, a, b) == doctest::Approx(pairDistance(pm.g, a, b)).epsilon(1e-12));
}
