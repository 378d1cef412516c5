#include "modlab/ahlfors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "modlab/metric.hpp"

namespace modlab {

namespace {

double unitDouble(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

int pick(std::mt19937_64& rng, const std::vector<int>& pool) {
  return pool[static_cast<std::size_t>(rng() % pool.size())];
}

}  // namespace

AhlforsScan ahlforsScanY(const SurfaceMesh& mesh, int count, std::uint64_t seed, double rMin,
                         double rMax) {
  if (count <= 0 || !(0 < rMin && rMin < rMax))
    throw std::invalid_argument("ahlforsScanY: bad sample plan");

  const WeightedGraph g = surfaceGraph(mesh);
  Dijkstra rim;
  std::vector<int> rimVerts;
  for (int v = 0; v < static_cast<int>(mesh.verts.size()); ++v)
    if (mesh.verts[v].flags & kVertexBoundary) rimVerts.push_back(v);
  rim.run(g, rimVerts);

  // Strata hold only centers that admit at least the smallest radius; larger
  // draws can still be rejected against the per-center rim distance.
  auto clear = [&](int v) { return rim.dist[v] >= rMin; };
  std::vector<int> baseVerts, seamVerts, anyVerts;
  std::vector<std::vector<int>> pillowByLevel(static_cast<std::size_t>(mesh.depthM) + 1);
  for (int v = 0; v < static_cast<int>(mesh.verts.size()); ++v) {
    if (!clear(v)) continue;
    anyVerts.push_back(v);
    const ChartId& c = mesh.verts[v].chart;
    if (c.isBase())
      baseVerts.push_back(v);
    else
      pillowByLevel[static_cast<std::size_t>(c.level)].push_back(v);
    if (mesh.verts[v].flags & kVertexSlit) seamVerts.push_back(v);
  }
  std::vector<int> pillowLevels;
  for (int m = 1; m <= mesh.depthM; ++m)
    if (!pillowByLevel[static_cast<std::size_t>(m)].empty()) pillowLevels.push_back(m);
  if (anyVerts.empty()) throw std::invalid_argument("ahlforsScanY: radius floor exceeds the mesh");

  std::mt19937_64 rng(seed);
  const double logSpan = std::log(rMax / rMin);

  AhlforsScan scan;
  scan.samples.reserve(static_cast<std::size_t>(count));
  int pillowTurn = 0;
  for (int i = 0; i < count; ++i) {
    const int stratum = i % 5;
    std::string label;
    int center = -1;
    double r = 0;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) throw std::logic_error("ahlforsScanY: rejection stalled");
      switch (stratum) {
        case 0:
          center = mesh.cusp;
          label = "cusp";
          break;
        case 1:
          if (baseVerts.empty()) { center = pick(rng, anyVerts); label = "any"; break; }
          center = pick(rng, baseVerts);
          label = "base";
          break;
        case 2:
          if (pillowLevels.empty()) { center = pick(rng, anyVerts); label = "any"; break; }
          {
            const int m = pillowLevels[static_cast<std::size_t>(pillowTurn) % pillowLevels.size()];
            center = pick(rng, pillowByLevel[static_cast<std::size_t>(m)]);
            label = "pillow-" + std::to_string(m);
          }
          break;
        case 3:
          if (seamVerts.empty()) { center = pick(rng, anyVerts); label = "any"; break; }
          center = pick(rng, seamVerts);
          label = "slit";
          break;
        default:
          center = pick(rng, anyVerts);
          label = "any";
          break;
      }
      r = rMin * std::exp(unitDouble(rng) * logSpan);
      if (r <= rim.dist[center]) break;
      ++scan.rejectedDraws;
    }
    if (stratum == 2) ++pillowTurn;

    BallSample s;
    s.center = center;
    s.stratum = label;
    s.r = r;
    s.inner = ballMeasureY(mesh, center, r, BallRule::Inner);
    s.mid = ballMeasureY(mesh, center, r, BallRule::Mid);
    s.outer = ballMeasureY(mesh, center, r, BallRule::Outer);
    scan.samples.push_back(std::move(s));
  }

  scan.minInnerRatio = kInfDist;
  scan.maxOuterRatio = 0;
  for (const auto& s : scan.samples) {
    scan.minInnerRatio = std::min(scan.minInnerRatio, s.innerRatio());
    scan.maxOuterRatio = std::max(scan.maxOuterRatio, s.outerRatio());
  }
  return scan;
}

}  // namespace modlab
