#include "modlab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace modlab {

void Dijkstra::run(const WeightedGraph& g, std::span<const int> sources, double cutoff,
                   const std::vector<char>* allowed, int stopAt) {
  const int n = g.n();
  dist.assign(n, kInfDist);
  prev.assign(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (int s : sources) {
    if (s < 0 || s >= n) throw std::invalid_argument("Dijkstra: bad source");
    if (allowed && !(*allowed)[s]) continue;
    dist[s] = 0;
    heap.push({0.0, s});
  }
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    if (v == stopAt) return;
    for (int o = g.adjOff[v]; o < g.adjOff[v + 1]; ++o) {
      const int w = g.adjVert[o];
      if (allowed && !(*allowed)[w]) continue;
      const double nd = d + g.adjLen[o];
      if (nd < dist[w] && nd <= cutoff) {
        dist[w] = nd;
        prev[w] = v;
        heap.push({nd, w});
      }
    }
  }
}

std::vector<int> Dijkstra::pathTo(int target) const {
  if (!(dist[target] < kInfDist)) return {};
  std::vector<int> path;
  for (int v = target; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

double pairDistance(const WeightedGraph& g, int a, int b) {
  if (a == b) return 0;
  const int s = std::min(a, b), t = std::max(a, b);
  Dijkstra d;
  const int src[1] = {s};
  d.run(g, src, kInfDist, nullptr, t);
  return d.dist[t];
}

std::vector<int> pathBetween(const WeightedGraph& g, int a, int b) {
  Dijkstra d;
  const int src[1] = {a};
  d.run(g, src, kInfDist, nullptr, b);
  return d.pathTo(b);
}

double pathLength(const WeightedGraph& g, const std::vector<int>& path) {
  double total = 0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    double best = kInfDist;
    for (int o = g.adjOff[path[k]]; o < g.adjOff[path[k] + 1]; ++o)
      if (g.adjVert[o] == path[k + 1]) best = std::min(best, g.adjLen[o]);
    if (!(best < kInfDist)) throw std::invalid_argument("pathLength: not an edge walk");
    total += best;
  }
  return total;
}

double setDiameter(const WeightedGraph& g, const std::vector<int>& set) {
  if (set.size() < 2) return 0;
  Dijkstra d;
  auto farthest = [&](int from) {
    const int src[1] = {from};
    d.run(g, src);
    std::pair<double, int> best{-1, from};
    for (int v : set) best = std::max(best, {d.dist[v], v});
    return best;
  };
  if (set.size() <= 8) {
    double best = 0;
    for (int v : set) best = std::max(best, farthest(v).first);
    return best;
  }
  auto [d1, v1] = farthest(set.front());
  auto [d2, v2] = farthest(v1);
  (void)v2;
  return std::max(d1, d2);
}

RelativeDistance relativeDistance(const WeightedGraph& g, const std::vector<int>& E,
                                  const std::vector<int>& F) {
  if (E.size() < 2 || F.size() < 2)
    throw std::invalid_argument("relativeDistance: degenerate continuum");
  RelativeDistance r;
  r.diamE = setDiameter(g, E);
  r.diamF = setDiameter(g, F);
  if (!(r.diamE > 0) || !(r.diamF > 0))
    throw std::invalid_argument("relativeDistance: degenerate continuum");
  Dijkstra d;
  d.run(g, E);
  r.dist = kInfDist;
  for (int v : F) r.dist = std::min(r.dist, d.dist[v]);
  r.delta = r.dist / std::min(r.diamE, r.diamF);
  return r;
}

namespace {

double ruleValue(BallRule rule, const std::vector<double>& corners) {
  switch (rule) {
    case BallRule::Inner:
    case BallRule::Mid: {
      if (rule == BallRule::Inner) {
        double m = 0;
        for (double c : corners) m = std::max(m, c);
        return m;
      }
      double s = 0;
      for (double c : corners) s += c;
      return s / static_cast<double>(corners.size());
    }
    case BallRule::Outer: {
      double m = kInfDist;
      for (double c : corners) m = std::min(m, c);
      return m;
    }
  }
  return kInfDist;
}

}  // namespace

double ballMeasureY(const SurfaceMesh& mesh, int center, double r, BallRule rule) {
  if (!(r > 0)) return 0;
  WeightedGraph g;  // thin view over the surface CSR
  g.adjOff = mesh.adjOff;
  g.adjVert = mesh.adjVert;
  g.adjLen = mesh.adjLen;
  Dijkstra d;
  const int src[1] = {center};
  d.run(g, src, r + 4 * mesh.h);
  double total = 0;
  std::vector<double> corners;
  for (const auto& c : mesh.cells) {
    corners.clear();
    for (int v : c.loop) corners.push_back(d.dist[v]);
    if (ruleValue(rule, corners) <= r) total += c.area;
  }
  return total;
}

double ballMeasureX(const ProductMesh& pm, int center, double r, BallRule rule) {
  if (!(r > 0)) return 0;
  Dijkstra d;
  const int src[1] = {center};
  d.run(pm.g, src, r + 4 * pm.base->h + 2 * pm.hz);
  double total = 0;
  std::vector<double> corners;
  for (int l = 0; l + 1 < pm.layers; ++l) {
    for (const auto& c : pm.base->cells) {
      corners.clear();
      for (int v : c.loop) {
        corners.push_back(d.dist[pm.id(v, l)]);
        corners.push_back(d.dist[pm.id(v, l + 1)]);
      }
      if (ruleValue(rule, corners) <= r) total += c.area * pm.hz;
    }
  }
  return total;
}

double unitBallVolume(int k) {
  if (k < 0) throw std::invalid_argument("unitBallVolume: negative dimension");
  return std::pow(std::acos(-1.0), k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

double surfaceComparisonBound(int n) { return 2.0 * unitBallVolume(n) / unitBallVolume(n - 1); }

}  // namespace modlab
