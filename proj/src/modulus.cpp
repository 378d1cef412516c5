#include "modlab/modulus.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "modlab/dualascent.hpp"

namespace modlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Separation {
  bool reachable = false;
  double length = kInf;   // rho-length of the shortest connecting path
  std::vector<int> path;  // vertex sequence, source first
};

Separation separate(const WeightedGraph& g, const std::vector<double>& rho,
                    std::span<const int> sources, const std::vector<char>* support,
                    const std::vector<char>* blocked, const std::vector<char>& isTarget) {
  const int n = g.n();
  std::vector<double> dist(n, kInf);
  std::vector<int> prevV(n, -1);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (int s : sources) {
    if (support && !(*support)[s]) continue;
    if (blocked && (*blocked)[s]) continue;
    dist[s] = 0;
    heap.push({0.0, s});
  }
  Separation out;
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    if (isTarget[v]) {
      out.reachable = true;
      out.length = d;
      for (int u = v; u != -1; u = prevV[u]) out.path.push_back(u);
      std::reverse(out.path.begin(), out.path.end());
      return out;
    }
    for (int o = g.adjOff[v]; o < g.adjOff[v + 1]; ++o) {
      int w = g.adjVert[o];
      if (support && !(*support)[w]) continue;
      if (blocked && (*blocked)[w]) continue;
      double nd = d + 0.5 * (rho[v] + rho[w]) * g.adjLen[o];
      if (nd < dist[w]) {
        dist[w] = nd;
        prevV[w] = v;
        heap.push({nd, w});
      }
    }
  }
  return out;
}

// Vertex coefficients of the path constraint: half the sum of the incident
// step lengths, endpoints half their single step.
void addPathRow(DualAscent& inner, const WeightedGraph& g, const std::vector<int>& path) {
  const size_t k = path.size();
  if (k < 2) throw std::logic_error("vertexModulus: degenerate path");
  std::vector<double> steps(k - 1);
  for (size_t i = 0; i + 1 < k; ++i) {
    double best = kInf;  // min over parallel edges, same as the search uses
    int v = path[i], w = path[i + 1];
    for (int o = g.adjOff[v]; o < g.adjOff[v + 1]; ++o)
      if (g.adjVert[o] == w) best = std::min(best, g.adjLen[o]);
    if (!(best < kInf)) throw std::logic_error("vertexModulus: path step is not an edge");
    steps[i] = best;
  }
  std::vector<double> coef(k);
  coef[0] = 0.5 * steps[0];
  coef[k - 1] = 0.5 * steps[k - 2];
  for (size_t i = 1; i + 1 < k; ++i) coef[i] = 0.5 * (steps[i - 1] + steps[i]);
  inner.addRow(path, std::move(coef));
}

}  // namespace

ModulusResult vertexModulus(const WeightedGraph& g, std::span<const int> sources,
                            std::span<const int> targets, const ModulusOptions& opt,
                            const std::vector<char>* support) {
  if (!(opt.p > 1)) throw std::invalid_argument("vertexModulus: requires p > 1");
  if (sources.empty() || targets.empty())
    throw std::invalid_argument("vertexModulus: empty endpoint set");
  const int n = g.n();
  std::vector<char> isTarget(n, 0);
  for (int t : targets) isTarget[t] = 1;
  for (int s : sources)
    if (isTarget[s]) throw std::invalid_argument("vertexModulus: endpoint sets intersect");

  ModulusResult res;
  res.rho.assign(n, 0.0);

  Separation probe = separate(g, res.rho, sources, support, nullptr, isTarget);
  if (!probe.reachable) {
    res.connected = false;
    res.converged = true;
    return res;
  }

  DualAscent inner(g.vertexMeasure, opt.p);
  std::map<std::vector<int>, int> seen;
  seen.emplace(probe.path, 0);
  addPathRow(inner, g, probe.path);

  // Grows the working set by several vertex-disjoint violated paths per round;
  // wide families with many parallel geodesics fill in orders of magnitude
  // faster that way than one path at a time.
  const int kBatch = 16;
  std::vector<char> blocked(n, 0);
  auto harvest = [&](const Separation& first) {
    int added = 0;
    std::fill(blocked.begin(), blocked.end(), 0);
    Separation cur = first;
    for (int b = 0; b < kBatch; ++b) {
      if (!(cur.length < 1.0 - 1e-12)) break;
      if (seen.emplace(cur.path, inner.rowCount()).second) {
        addPathRow(inner, g, cur.path);
        ++added;
      }
      for (int v : cur.path) blocked[v] = 1;
      if (b + 1 < kBatch) {
        cur = separate(g, inner.x(), sources, support, &blocked, isTarget);
        if (!cur.reachable) break;
      }
    }
    return added;
  };

  double innerTol = 0.1 * opt.tol;
  double lastGap = 1.0;
  double adapt = 0.05;  // early rounds solve the working set only loosely
  int sweepsSinceRefresh = 0;
  for (int outer = 0; outer < opt.maxOuter; ++outer) {
    res.outerIters = outer + 1;
    double sweepTol = std::min(0.01, std::max(innerTol, adapt * lastGap));
    int maxSweeps = 200 + 10 * inner.rowCount();
    for (int sw = 0; sw < maxSweeps; ++sw) {
      double drift = inner.sweep();
      if (++sweepsSinceRefresh >= 64) {
        inner.refresh();
        sweepsSinceRefresh = 0;
      }
      if (drift <= sweepTol) break;
    }

    Separation sep = separate(g, inner.x(), sources, support, nullptr, isTarget);
    assert(sep.reachable);
    double energy = inner.energy();
    double upper = (sep.length > 0) ? energy / std::pow(sep.length, opt.p) : kInf;
    double lower = inner.dualObjective();
    res.value = upper;
    res.dualValue = std::max(res.dualValue, lower);
    res.constraints = inner.rowCount();
    if (upper < kInf) {
      res.gap = lastGap = (upper - res.dualValue) / std::max(upper, 1e-300);
      if (res.gap <= opt.tol) {
        res.converged = true;
        break;
      }
    }
    if (sep.length < 1.0 - 1e-12) {
      if (harvest(sep) == 0) {
        innerTol *= 0.1;  // nothing new: the working set needs a tighter solve
        adapt *= 0.2;
      }
    } else {
      innerTol *= 0.1;  // feasible but gap too large: polish the multipliers
      adapt *= 0.2;
    }
  }

  // Report the admissibly rescaled density for the full family.
  Separation fin = separate(g, inner.x(), sources, support, nullptr, isTarget);
  if (fin.length > 0 && fin.length < kInf) {
    double scale = 1.0 / fin.length;
    res.rho = inner.x();
    for (double& x : res.rho) x *= scale;
    res.value = inner.energy() * std::pow(scale, opt.p);
    res.gap = (res.value - res.dualValue) / std::max(res.value, 1e-300);
  }
  return res;
}

}  // namespace modlab
