#include "doctest.h"
#include "modlab/metric.hpp"

#include <cmath>
#include <random>

using namespace modlab;

namespace {

int findVertex(const SurfaceMesh& mesh, ChartKind kind, double u, double v) {
  for (int i = 0; i < static_cast<int>(mesh.verts.size()); ++i)
    if (mesh.verts[i].chart.kind == kind && mesh.verts[i].u == u && mesh.verts[i].v == v) return i;
  return -1;
}

WeightedGraph metricView(const SurfaceMesh& mesh) {
  WeightedGraph g;
  g.adjOff = mesh.adjOff;
  g.adjVert = mesh.adjVert;
  g.adjLen = mesh.adjLen;
  return g;
}

}  // namespace

TEST_CASE("flat patch ball measure approaches the disk area") {
  auto mesh = buildPillowcase(DyadicSlit{1, 1}, 1.0 / 128);
  const int center = findVertex(*mesh, ChartKind::PillowTop, 0.25, 0.25);
  REQUIRE(center >= 0);
  const double pi = std::acos(-1.0);
  for (double r : {0.15, 0.2}) {
    const double oracle = pi * r * r;
    const double inner = ballMeasureY(*mesh, center, r, BallRule::Inner);
    const double mid = ballMeasureY(*mesh, center, r, BallRule::Mid);
    const double outer = ballMeasureY(*mesh, center, r, BallRule::Outer);
    CHECK(inner <= mid);
    CHECK(mid <= outer);
    CHECK(inner <= oracle);
    CHECK(outer >= oracle);
    CHECK(std::abs(mid - oracle) < 0.03 * oracle);
  }
}

TEST_CASE("ball at the cusp matches the doubled cubic area") {
  auto mesh = buildSurface(0, 1.0 / 256);
  for (double r : {0.2, 0.25}) {
    const double oracle = r * r * r * r / 6.0;
    const double inner = ballMeasureY(*mesh, mesh->cusp, r, BallRule::Inner);
    const double mid = ballMeasureY(*mesh, mesh->cusp, r, BallRule::Mid);
    const double outer = ballMeasureY(*mesh, mesh->cusp, r, BallRule::Outer);
    CHECK(inner <= oracle);
    CHECK(outer >= oracle);
    CHECK(std::abs(mid - oracle) < 0.05 * oracle);
  }
}

TEST_CASE("ball measure is monotone in the radius") {
  auto mesh = buildSurface(1, 1.0 / 32);
  const int center = mesh->cusp;
  for (BallRule rule : {BallRule::Inner, BallRule::Mid, BallRule::Outer}) {
    double prev = 0;
    for (double r = 0.05; r <= 0.4; r += 0.05) {
      const double m = ballMeasureY(*mesh, center, r, rule);
      CHECK(m >= prev);
      prev = m;
    }
  }
}

TEST_CASE("surface distances satisfy the metric axioms") {
  auto mesh = buildSurface(2, 1.0 / 16);
  const WeightedGraph g = metricView(*mesh);
  const int n = g.n();

  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> pick(0, n - 1);

  // distance rows from a fixed sample of sources
  const int kSources = 40;
  std::vector<int> sample(kSources);
  std::vector<std::vector<double>> row(kSources);
  Dijkstra d;
  for (int s = 0; s < kSources; ++s) {
    sample[s] = pick(rng);
    const int src[1] = {sample[s]};
    d.run(g, src);
    row[s] = d.dist;
  }

  for (int s = 0; s < kSources; ++s) {
    CHECK(row[s][sample[s]] == 0.0);
    for (int t = 0; t < kSources; ++t)
      CHECK(std::abs(row[s][sample[t]] - row[t][sample[s]]) <= 1e-12);
  }

  std::uniform_int_distribution<int> pick3(0, kSources - 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int a = pick3(rng), b = pick3(rng), c = pick3(rng);
    const double ab = row[a][sample[b]], bc = row[b][sample[c]], ac = row[a][sample[c]];
    CHECK(ac <= ab + bc + 1e-12);
  }

  // canonical pair queries are symmetric by construction
  for (int trial = 0; trial < 20; ++trial) {
    const int a = pick(rng), b = pick(rng);
    CHECK(pairDistance(g, a, b) == pairDistance(g, b, a));
  }
}

TEST_CASE("seam paths give exact dyadic distances") {
  auto mesh = buildSurface(2, 1.0 / 16);
  const WeightedGraph g = metricView(*mesh);
  // along y = 0 every edge advances t by exactly h and nothing is shorter
  const int half = findVertex(*mesh, ChartKind::BaseTop, 0.5, 0.0);
  REQUIRE(half >= 0);
  CHECK(pairDistance(g, mesh->cusp, half) == 0.5);
  const int rim = findVertex(*mesh, ChartKind::BaseTop, 1.0 - 1.0 / 16, 0.0);
  REQUIRE(rim >= 0);
  CHECK(pairDistance(g, mesh->cusp, rim) == 1.0 - 1.0 / 16);
}

TEST_CASE("unit ball volumes and the comparison ratio") {
  const double pi = std::acos(-1.0);
  CHECK(std::abs(unitBallVolume(0) - 1.0) <= 1e-14);
  CHECK(std::abs(unitBallVolume(1) - 2.0) <= 1e-14);
  CHECK(std::abs(unitBallVolume(2) - pi) <= 1e-14);
  CHECK(std::abs(unitBallVolume(3) - 4.0 * pi / 3.0) <= 1e-13);
  CHECK(std::abs(surfaceComparisonBound(3) - 8.0 / 3.0) <= 1e-13);
  CHECK(std::abs(surfaceComparisonBound(2) - 2.0 * pi / 2.0) <= 1e-13);
}
