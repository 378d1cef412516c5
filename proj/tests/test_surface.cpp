#include "doctest.h"
#include "modlab/surface.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

using namespace modlab;

namespace {

double pillowAreaUpTo(int depthM) {
  double a = 0;
  for (int m = 1; m <= depthM; ++m) a += pillowLevelArea(m);
  return a;
}

int parallelEdgeCount(const SurfaceMesh& mesh, int a, int b) {
  int n = 0;
  for (int o = mesh.adjOff[a]; o < mesh.adjOff[a + 1]; ++o)
    if (mesh.adjVert[o] == b) ++n;
  return n;
}

}  // namespace

TEST_CASE("grid exponent accepts powers of two only") {
  CHECK(gridExponent(0.5, 1) == 1);
  CHECK(gridExponent(1.0 / 8, 1) == 3);
  CHECK(gridExponent(1.0 / 128, 7) == 7);
  CHECK_THROWS_AS(gridExponent(0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(gridExponent(0.25, 3), std::invalid_argument);
  CHECK_THROWS_AS(gridExponent(0.0, 1), std::invalid_argument);
}

TEST_CASE("base chart reference area approximates the cubic ramp") {
  const double h = 1.0 / 64;
  const double exact = std::pow(1.0 - h, 4) / 12.0;
  const double ref = baseChartAreaReference(h);
  CHECK(ref > exact);  // trapezoids over a convex profile overshoot
  CHECK(ref - exact < 1e-3);
}

TEST_CASE("slitless double is a disk with one boundary cycle") {
  auto mesh = buildSurface(0, 1.0 / 8);
  CHECK(mesh->eulerCharacteristic() == 1);
  CHECK(mesh->slits.empty());
  CHECK(mesh->totalArea == doctest::Approx(2 * baseChartAreaReference(1.0 / 8)).epsilon(1e-12));
  REQUIRE_FALSE(mesh->boundaryLoop.empty());
  for (int v : mesh->boundaryLoop) {
    CHECK(mesh->verts[v].u == 1.0 - 1.0 / 8);
    CHECK((mesh->verts[v].flags & kVertexBoundary) != 0);
  }
  REQUIRE(mesh->cusp >= 0);
  CHECK(mesh->verts[mesh->cusp].u == 0.0);
  CHECK(mesh->verts[mesh->cusp].v == 0.0);
  // one boundary cycle means every other complex edge bounds two cells
  int boundaryEdges = 0;
  for (std::int64_t e = 0; e < mesh->complexEdgeCount; ++e) {
    CHECK(mesh->edges[e].cellCount >= 1);
    CHECK(mesh->edges[e].cellCount <= 2);
    if (mesh->edges[e].cellCount == 1) ++boundaryEdges;
  }
  CHECK(boundaryEdges == static_cast<int>(mesh->boundaryLoop.size()));
  // shortcut edges follow and carry no cells
  for (std::size_t e = mesh->complexEdgeCount; e < mesh->edges.size(); ++e)
    CHECK(mesh->edges[e].cellCount == 0);
}

TEST_CASE("standalone pillowcase doubles to a sphere") {
  auto sphere = buildPillowcase(DyadicSlit{1, 1}, 1.0 / 8);
  CHECK(sphere->eulerCharacteristic() == 2);
  CHECK(sphere->boundaryLoop.empty());
  CHECK(sphere->totalArea == doctest::Approx(0.5).epsilon(1e-12));
  int marked = 0;
  for (const auto& vtx : sphere->verts)
    if (vtx.flags & kVertexSlit) ++marked;
  CHECK(marked == 2);  // corner and the interior point at arc 1/24

  // slit spanning the whole bottom edge (capped length = side)
  auto capped = buildPillowcase(DyadicSlit{3, 7}, 1.0 / 16);
  CHECK(capped->eulerCharacteristic() == 2);
  CHECK(capped->totalArea == doctest::Approx(2.0 / 64).epsilon(1e-12));
}

TEST_CASE("one glued pillowcase with no interior slit vertices keeps the disk type") {
  // at h=1/8 the only level-1 slit has length 1/24 < h, so the opened slit is a
  // single duplicated edge between its two endpoints
  auto mesh = buildSurface(1, 1.0 / 8);
  CHECK(mesh->eulerCharacteristic() == 1);
  CHECK(mesh->totalArea ==
        doctest::Approx(2 * baseChartAreaReference(1.0 / 8) + 0.5).epsilon(1e-12));
  REQUIRE(mesh->slits.size() == 1);
  const auto& rec = mesh->slits[0];
  CHECK(rec.interiorPairs.empty());
  CHECK(rec.endBottom != rec.endTop);
  // three parallel edges: the two prime-end sides plus the mirror copy's
  // untouched segment
  CHECK(parallelEdgeCount(*mesh, rec.endBottom, rec.endTop) == 3);
  for (int o = mesh->adjOff[rec.endBottom]; o < mesh->adjOff[rec.endBottom + 1]; ++o)
    if (mesh->adjVert[o] == rec.endTop)
      CHECK(mesh->adjLen[o] == doctest::Approx(1.0 / 24).epsilon(1e-14));
}

TEST_CASE("deeper gluing keeps disk type and splits slit interiors") {
  auto mesh = buildSurface(2, 1.0 / 16);
  CHECK(mesh->eulerCharacteristic() == 1);
  CHECK(mesh->totalArea ==
        doctest::Approx(2 * baseChartAreaReference(1.0 / 16) + pillowAreaUpTo(2)).epsilon(1e-12));
  REQUIRE(mesh->slits.size() == 3);

  for (const auto& rec : mesh->slits) {
    CHECK(rec.endBottom != rec.endTop);
    CHECK(rec.interiorArcs.size() == rec.interiorPairs.size());
    for (std::size_t k = 0; k < rec.interiorPairs.size(); ++k) {
      const auto [l, r] = rec.interiorPairs[k];
      CHECK(l != r);
      CHECK((mesh->verts[l].flags & kVertexSlit) != 0);
      CHECK((mesh->verts[r].flags & kVertexSlit) != 0);
      CHECK(rec.interiorArcs[k] > 0);
      CHECK(rec.interiorArcs[k] < rec.slit.length());
    }
  }

  // t=3/4: f=9/64 gives interior rungs at 1/16 and 2/16; the other two slits
  // are shorter than h and open into a single duplicated edge
  std::size_t found = 0;
  for (const auto& rec : mesh->slits) {
    if (rec.slit.level == 1) {
      CHECK(rec.interiorPairs.empty());
      ++found;
    } else if (rec.slit.numer == 3) {
      CHECK(rec.interiorPairs.size() == 2);
      ++found;
    } else {
      CHECK(rec.interiorPairs.empty());
      ++found;
    }
  }
  CHECK(found == 3);

  double dualSum = 0;
  for (double a : mesh->dualArea) dualSum += a;
  CHECK(dualSum == doctest::Approx(mesh->totalArea).epsilon(1e-9));
}

TEST_CASE("profile height can tie a grid rung exactly") {
  // t=3/4 at h=1/64: f = 9/64 lands on rung 9 exactly
  auto mesh = buildSurface(2, 1.0 / 64);
  CHECK(mesh->eulerCharacteristic() == 1);
  bool checked = false;
  for (const auto& rec : mesh->slits) {
    if (rec.slit.level != 2 || rec.slit.numer != 3) continue;
    CHECK(rec.interiorPairs.size() == 8);
    for (std::size_t k = 0; k < rec.interiorArcs.size(); ++k)
      CHECK(rec.interiorArcs[k] == (k + 1) / 64.0);
    checked = true;
  }
  CHECK(checked);
}

TEST_CASE("construction matrix: disk type, one boundary cycle, additive area") {
  struct Case {
    int M;
    double h;
  };
  const Case cases[] = {{0, 1.0 / 8}, {1, 1.0 / 8},  {2, 1.0 / 16},
                        {2, 1.0 / 64}, {4, 1.0 / 32}, {6, 1.0 / 128}};
  for (const auto& [M, h] : cases) {
    CAPTURE(M);
    CAPTURE(h);
    auto mesh = buildSurface(M, h);
    CHECK(mesh->eulerCharacteristic() == 1);
    REQUIRE_FALSE(mesh->boundaryLoop.empty());
    for (int v : mesh->boundaryLoop) CHECK(mesh->verts[v].u == 1.0 - h);
    CHECK(mesh->totalArea ==
          doctest::Approx(2 * baseChartAreaReference(h) + pillowAreaUpTo(M)).epsilon(1e-12));
    CHECK(mesh->slits.size() == (std::size_t{1} << M) - 1);

    double dualSum = 0;
    for (double a : mesh->dualArea) dualSum += a;
    CHECK(dualSum == doctest::Approx(mesh->totalArea).epsilon(1e-9));

    for (std::size_t e = 0; e < mesh->edges.size(); ++e) CHECK(mesh->edges[e].len > 0);
    for (std::int64_t e = 0; e < mesh->complexEdgeCount; ++e) CHECK(mesh->edgeDualLen[e] > 0);

    // interface vertices report base-chart provenance
    for (const auto& rec : mesh->slits) {
      CHECK(mesh->verts[rec.endBottom].chart.isBase());
      CHECK(mesh->verts[rec.endTop].chart.isBase());
      for (const auto& [l, r] : rec.interiorPairs) {
        CHECK(mesh->verts[l].chart.isBase());
        CHECK(mesh->verts[r].chart.isBase());
      }
    }
  }
}
