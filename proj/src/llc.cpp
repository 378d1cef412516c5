#include "modlab/llc.hpp"

#include <algorithm>
#include <stdexcept>

namespace modlab {

namespace {

void scanPath(const std::vector<double>& centerDist, LlcWitness& w) {
  w.clearance = kInfDist;
  w.containment = 0;
  for (int v : w.path) {
    w.clearance = std::min(w.clearance, centerDist[v]);
    w.containment = std::max(w.containment, centerDist[v]);
  }
}

}  // namespace

LlcWitness connectAvoiding(const WeightedGraph& g, const std::vector<double>& centerDist,
                           double keepOut, int y, int z) {
  const int n = g.n();
  if (y < 0 || y >= n || z < 0 || z >= n) throw std::invalid_argument("connectAvoiding: bad endpoint");
  LlcWitness w;
  Dijkstra d;
  const int src[1] = {y};
  if (keepOut > 0) {
    std::vector<char> allowed(n, 0);
    for (int v = 0; v < n; ++v) allowed[v] = centerDist[v] >= keepOut ? 1 : 0;
    if (!allowed[y] || !allowed[z]) return w;
    d.run(g, src, kInfDist, &allowed, z);
  } else {
    d.run(g, src, kInfDist, nullptr, z);
  }
  if (!(d.dist[z] < kInfDist)) return w;
  w.found = true;
  w.path = d.pathTo(z);
  scanPath(centerDist, w);
  return w;
}

LlcWitness connectThrough(const WeightedGraph& g, const Dijkstra& fromX, int y, int z) {
  (void)g;
  LlcWitness w;
  if (!(fromX.dist[y] < kInfDist) || !(fromX.dist[z] < kInfDist)) return w;
  w.path = fromX.pathTo(y);               // x .. y
  std::reverse(w.path.begin(), w.path.end());  // y .. x
  auto leg = fromX.pathTo(z);             // x .. z
  w.path.insert(w.path.end(), leg.begin() + 1, leg.end());
  w.found = true;
  scanPath(fromX.dist, w);
  return w;
}

}  // namespace modlab
