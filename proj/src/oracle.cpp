#include "modlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace modlab {

namespace {

// Vertex-pair adjacency with parallel edges collapsed to their shortest
// representative; built straight from the edge list on purpose so this file
// does not depend on the CSR index the solver uses.
std::vector<std::map<int, double>> pairAdjacency(const WeightedGraph& g) {
  std::vector<std::map<int, double>> adj(g.n());
  for (const auto& e : g.edges) {
    auto touch = [&](int a, int b) {
      auto [it, fresh] = adj[a].try_emplace(b, e.len);
      if (!fresh) it->second = std::min(it->second, e.len);
    };
    touch(e.a, e.b);
    touch(e.b, e.a);
  }
  return adj;
}

void dfsPaths(const std::vector<std::map<int, double>>& adj, const std::vector<char>& blocked,
              const std::vector<char>& isTarget, std::vector<int>& stack, std::vector<char>& used,
              std::vector<std::vector<int>>& out, size_t cap) {
  int v = stack.back();
  for (const auto& [w, len] : adj[v]) {
    (void)len;
    if (used[w] || blocked[w]) continue;
    stack.push_back(w);
    if (isTarget[w]) {
      out.push_back(stack);
      if (out.size() > cap) throw std::runtime_error("enumerateConnectingPaths: too many paths");
    } else {
      used[w] = 1;
      dfsPaths(adj, blocked, isTarget, stack, used, out, cap);
      used[w] = 0;
    }
    stack.pop_back();
  }
}

// Symmetric positive definite solve, in place, for the Newton system.
void choleskySolve(std::vector<double>& H, std::vector<double>& b, int n) {
  for (int j = 0; j < n; ++j) {
    double d = H[j * n + j];
    for (int k = 0; k < j; ++k) d -= H[j * n + k] * H[j * n + k];
    if (!(d > 0)) throw std::runtime_error("denseRowProgram: Newton system not SPD");
    d = std::sqrt(d);
    H[j * n + j] = d;
    for (int i = j + 1; i < n; ++i) {
      double x = H[i * n + j];
      for (int k = 0; k < j; ++k) x -= H[i * n + k] * H[j * n + k];
      H[i * n + j] = x / d;
    }
  }
  for (int i = 0; i < n; ++i) {
    double x = b[i];
    for (int k = 0; k < i; ++k) x -= H[i * n + k] * b[k];
    b[i] = x / H[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double x = b[i];
    for (int k = i + 1; k < n; ++k) x -= H[k * n + i] * b[k];
    b[i] = x / H[i * n + i];
  }
}

}  // namespace

std::vector<std::vector<int>> enumerateConnectingPaths(const WeightedGraph& g,
                                                       const std::vector<int>& sources,
                                                       const std::vector<int>& targets,
                                                       size_t cap) {
  if (g.n() > 64) throw std::runtime_error("enumerateConnectingPaths: graph too large");
  auto adj = pairAdjacency(g);
  std::vector<char> isTarget(g.n(), 0), blocked(g.n(), 0);
  for (int t : targets) isTarget[t] = 1;
  // Paths through a second source have a strictly stronger sub-path rooted
  // there, so they are redundant constraints; skip them.
  for (int s : sources) blocked[s] = 1;
  std::vector<std::vector<int>> out;
  for (int s : sources) {
    if (isTarget[s])
      throw std::invalid_argument("enumerateConnectingPaths: endpoint sets intersect");
    std::vector<int> stack{s};
    std::vector<char> used(g.n(), 0);
    used[s] = 1;
    dfsPaths(adj, blocked, isTarget, stack, used, out, cap);
  }
  return out;
}

double denseRowProgram(const std::vector<double>& weights,
                       const std::vector<std::vector<std::pair<int, double>>>& sparseRows,
                       double p) {
  if (sparseRows.empty()) return 0;
  if (!(p > 1)) throw std::invalid_argument("denseRowProgram: requires p > 1");

  // Compress to items that appear in some row; everything else sits at zero
  // without affecting any constraint.
  std::vector<int> toDense(weights.size(), -1), itemOf;
  for (const auto& row : sparseRows)
    for (auto [i, c] : row) {
      (void)c;
      if (i < 0 || i >= static_cast<int>(weights.size()))
        throw std::invalid_argument("denseRowProgram: item out of range");
      if (toDense[i] < 0) {
        toDense[i] = static_cast<int>(itemOf.size());
        itemOf.push_back(i);
      }
    }
  const int n = static_cast<int>(itemOf.size());
  const int m = static_cast<int>(sparseRows.size());

  std::vector<std::vector<std::pair<int, double>>> rows(m);
  for (int r = 0; r < m; ++r)
    for (auto [i, c] : sparseRows[r]) {
      if (!(c > 0)) throw std::invalid_argument("denseRowProgram: nonpositive coefficient");
      rows[r].push_back({toDense[i], c});
    }
  std::vector<double> mu(n);
  for (int i = 0; i < n; ++i) {
    mu[i] = weights[itemOf[i]];
    if (!(mu[i] > 0)) throw std::invalid_argument("denseRowProgram: zero weight in a row");
  }

  // Strictly feasible start: uniform density with slack one on every row.
  double c0 = 0;
  for (const auto& row : rows) {
    double s = 0;
    for (auto [i, a] : row) s += a;
    c0 = std::max(c0, 2.0 / s);
  }
  std::vector<double> rho(n, c0);

  auto objective = [&](const std::vector<double>& x) {
    double f = 0;
    for (int i = 0; i < n; ++i) f += mu[i] * std::pow(x[i], p);
    return f;
  };
  auto slackOf = [&](const std::vector<double>& x, int r) {
    double s = -1.0;
    for (auto [i, a] : rows[r]) s += a * x[i];
    return s;
  };
  auto barrierF = [&](const std::vector<double>& x, double t) {
    double f = t * objective(x);
    for (int i = 0; i < n; ++i) {
      if (x[i] <= 0) return std::numeric_limits<double>::infinity();
      f -= std::log(x[i]);
    }
    for (int r = 0; r < m; ++r) {
      double s = slackOf(x, r);
      if (s <= 0) return std::numeric_limits<double>::infinity();
      f -= std::log(s);
    }
    return f;
  };

  std::vector<double> H(n * n), grad(n), step(n), slack(m), trial(n);
  double t = 1.0;
  const int barrierCount = m + n;
  for (int stage = 0; stage < 64; ++stage) {
    for (int newton = 0; newton < 120; ++newton) {
      for (int r = 0; r < m; ++r) slack[r] = slackOf(rho, r);
      std::fill(H.begin(), H.end(), 0.0);
      for (int i = 0; i < n; ++i) {
        grad[i] = t * p * mu[i] * std::pow(rho[i], p - 1.0) - 1.0 / rho[i];
        H[i * n + i] = t * p * (p - 1.0) * mu[i] * std::pow(rho[i], p - 2.0) +
                       1.0 / (rho[i] * rho[i]);
      }
      for (int r = 0; r < m; ++r) {
        double inv = 1.0 / slack[r];
        for (auto [i, a] : rows[r]) {
          grad[i] -= a * inv;
          for (auto [j, b] : rows[r]) H[i * n + j] += a * b * inv * inv;
        }
      }
      step = grad;
      choleskySolve(H, step, n);
      double decrement = 0;
      for (int i = 0; i < n; ++i) decrement += grad[i] * step[i];
      if (decrement * 0.5 <= 1e-13) break;

      double f0 = barrierF(rho, t);
      double alpha = 1.0;
      bool moved = false;
      while (alpha > 1e-14) {
        for (int i = 0; i < n; ++i) trial[i] = rho[i] - alpha * step[i];
        if (barrierF(trial, t) <= f0 - 0.25 * alpha * decrement) {
          rho = trial;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    if (barrierCount / t <= 1e-12 * std::max(1.0, objective(rho))) break;
    t *= 8.0;
  }
  return objective(rho);
}

double densePathModulus(const WeightedGraph& g, const std::vector<std::vector<int>>& paths,
                        double p) {
  if (paths.empty()) return 0;
  auto adj = pairAdjacency(g);
  std::vector<std::vector<std::pair<int, double>>> rows(paths.size());
  for (size_t r = 0; r < paths.size(); ++r) {
    const auto& path = paths[r];
    std::vector<double> acc(path.size(), 0.0);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      double len = adj[path[i]].at(path[i + 1]);
      acc[i] += 0.5 * len;
      acc[i + 1] += 0.5 * len;
    }
    for (size_t i = 0; i < path.size(); ++i) rows[r].push_back({path[i], acc[i]});
  }
  return denseRowProgram(g.vertexMeasure, rows, p);
}

TinyCase loadTinyCase(const std::string& jsonPath) {
  std::ifstream in(jsonPath);
  if (!in) throw std::runtime_error("loadTinyCase: cannot open " + jsonPath);
  nlohmann::json j;
  in >> j;

  TinyCase tc;
  tc.name = j.at("name").get<std::string>();
  tc.p = j.at("p").get<double>();

  int n = 0;
  if (j.at("mu").is_array()) {
    auto mus = j["mu"].get<std::vector<double>>();
    n = static_cast<int>(mus.size());
    tc.g.vertexMeasure = std::move(mus);
  } else {
    n = j.at("vertices").get<int>();
    tc.g.vertexMeasure.assign(n, j["mu"].get<double>());
  }
  for (const auto& e : j.at("edges")) {
    WeightedGraph::Edge ed;
    ed.a = e.at(0).get<int>();
    ed.b = e.at(1).get<int>();
    ed.len = e.at(2).get<double>();
    tc.g.edges.push_back(ed);
  }
  tc.g.buildIndex(n);
  tc.sources = j.at("sources").get<std::vector<int>>();
  tc.targets = j.at("targets").get<std::vector<int>>();
  for (int v : tc.sources)
    if (v < 0 || v >= n) throw std::runtime_error("loadTinyCase: source out of range");
  for (int v : tc.targets)
    if (v < 0 || v >= n) throw std::runtime_error("loadTinyCase: target out of range");
  if (j.contains("expected")) {
    tc.hasExpected = true;
    tc.expected = j["expected"].get<double>();
    tc.expectedTol = j.value("expected_tol", 1e-9);
  }
  return tc;
}

}  // namespace modlab
