#include "modlab/density.hpp"

#include <cmath>
#include <stdexcept>

#include "modlab/metric.hpp"
#include "modlab/surface.hpp"

namespace modlab {

std::vector<double> cuspDistances(const SurfaceMesh& mesh) {
  WeightedGraph g;
  g.adjOff = mesh.adjOff;
  g.adjVert = mesh.adjVert;
  g.adjLen = mesh.adjLen;
  Dijkstra d;
  const int src[1] = {mesh.cusp};
  d.run(g, src);
  return d.dist;
}

namespace {

void checkParams(double delta, double epsilon) {
  if (!(delta > 0) || !(delta < epsilon))
    throw std::invalid_argument("density parameters need 0 < delta < epsilon");
}

}  // namespace

std::vector<double> analyticDensity(const ProductMesh& pm, const std::vector<double>& cuspDist,
                                    double delta, double epsilon) {
  checkParams(delta, epsilon);
  const int nb = static_cast<int>(pm.base->verts.size());
  if (static_cast<int>(cuspDist.size()) != nb)
    throw std::invalid_argument("analyticDensity: cusp distance array does not match the base mesh");
  std::vector<double> rho(pm.g.n(), 0.0);
  for (int l = 0; l < pm.layers; ++l) {
    if (std::abs(pm.zOf(l)) > 1 + epsilon) continue;
    for (int v = 0; v < nb; ++v) {
      if (!(cuspDist[v] < delta)) continue;
      rho[pm.id(v, l)] = pm.base->verts[v].chart.isBase() ? 1.0 / delta : 1.0 / epsilon;
    }
  }
  return rho;
}

double energyBound(double delta, double epsilon, double cReg) {
  checkParams(delta, epsilon);
  return 4 * (1 + epsilon) * delta + cReg * delta * delta * (1 + epsilon) / (epsilon * epsilon * epsilon);
}

double densityEnergy(const WeightedGraph& g, std::span<const double> rho, double p) {
  if (static_cast<int>(rho.size()) != g.n())
    throw std::invalid_argument("densityEnergy: density does not match the graph");
  double e = 0;
  for (int v = 0; v < g.n(); ++v)
    if (rho[v] > 0) e += g.vertexMeasure[v] * std::pow(rho[v], p);
  return e;
}

std::vector<int> outerPlate(const ProductMesh& pm, const std::vector<double>& cuspDist,
                            double delta, double epsilon) {
  checkParams(delta, epsilon);
  const int nb = static_cast<int>(pm.base->verts.size());
  std::vector<int> out;
  for (int l = 0; l < pm.layers; ++l) {
    const bool highZ = std::abs(pm.zOf(l)) >= 1 + epsilon;
    for (int v = 0; v < nb; ++v)
      if (highZ || cuspDist[v] >= delta) out.push_back(pm.id(v, l));
  }
  return out;
}

namespace {

// Adjacency with lengths rescaled to the density metric (built directly on the
// existing CSR: rescaled lengths may legitimately be zero).
WeightedGraph rhoView(const WeightedGraph& g, std::span<const double> rho) {
  WeightedGraph w;
  w.adjOff = g.adjOff;
  w.adjVert = g.adjVert;
  w.adjLen.resize(g.adjLen.size());
  for (int v = 0; v < g.n(); ++v)
    for (int o = g.adjOff[v]; o < g.adjOff[v + 1]; ++o)
      w.adjLen[o] = 0.5 * (rho[v] + rho[g.adjVert[o]]) * g.adjLen[o];
  return w;
}

}  // namespace

double rhoPathLength(const WeightedGraph& g, std::span<const double> rho,
                     const std::vector<int>& path) {
  double total = 0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    double len = kInfDist;
    for (int o = g.adjOff[path[k]]; o < g.adjOff[path[k] + 1]; ++o)
      if (g.adjVert[o] == path[k + 1]) len = std::min(len, g.adjLen[o]);
    if (!(len < kInfDist)) throw std::invalid_argument("rhoPathLength: not an edge walk");
    total += 0.5 * (rho[path[k]] + rho[path[k + 1]]) * len;
  }
  return total;
}

double minRhoLength(const WeightedGraph& g, std::span<const double> rho,
                    std::span<const int> sources, std::span<const int> targets) {
  const WeightedGraph w = rhoView(g, rho);
  Dijkstra d;
  d.run(w, sources);
  double best = kInfDist;
  for (int t : targets) best = std::min(best, d.dist[t]);
  return best;
}

}  // namespace modlab
