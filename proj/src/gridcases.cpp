#include "modlab/gridcases.hpp"

#include <stdexcept>

namespace modlab {

EndpointFamily chainGraph(int edges, double edgeLen) {
  if (edges < 1) throw std::invalid_argument("chainGraph: need at least one edge");
  EndpointFamily f;
  for (int i = 0; i < edges; ++i) f.g.edges.push_back({i, i + 1, edgeLen});
  f.g.vertexMeasure.assign(edges + 1, edgeLen);
  f.g.vertexMeasure.front() = f.g.vertexMeasure.back() = 0.5 * edgeLen;
  f.g.edgeArea.assign(edges, 1.0);
  f.g.buildIndex(edges + 1);
  f.sources = {0};
  f.targets = {edges};
  return f;
}

EndpointFamily parallelChains(int chains, int edgesPerChain) {
  if (chains < 1) throw std::invalid_argument("parallelChains: need at least one chain");
  EndpointFamily f;
  const int stride = edgesPerChain + 1;
  for (int c = 0; c < chains; ++c) {
    int base = c * stride;
    for (int i = 0; i < edgesPerChain; ++i) f.g.edges.push_back({base + i, base + i + 1, 1.0});
    f.sources.push_back(base);
    f.targets.push_back(base + edgesPerChain);
  }
  f.g.vertexMeasure.assign(chains * stride, 1.0);
  for (int c = 0; c < chains; ++c) {
    f.g.vertexMeasure[c * stride] = 0.5;
    f.g.vertexMeasure[c * stride + edgesPerChain] = 0.5;
  }
  f.g.edgeArea.assign(f.g.edges.size(), 1.0);
  f.g.buildIndex(chains * stride);
  return f;
}

namespace {

EndpointFamily latticeSquare(int n) {
  if (n < 1) throw std::invalid_argument("squareGrid: need at least one cell");
  EndpointFamily f;
  const double h = 1.0 / n;
  auto id = [n](int ix, int iy) { return iy * (n + 1) + ix; };
  auto width = [&](int i) { return (i == 0 || i == n) ? 0.5 * h : h; };
  f.g.vertexMeasure.assign((n + 1) * (n + 1), 0.0);
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix <= n; ++ix) f.g.vertexMeasure[id(ix, iy)] = width(ix) * width(iy);
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      f.g.edges.push_back({id(ix, iy), id(ix + 1, iy), h});
      f.g.edgeArea.push_back(width(iy));
    }
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix <= n; ++ix) {
      f.g.edges.push_back({id(ix, iy), id(ix, iy + 1), h});
      f.g.edgeArea.push_back(width(ix));
    }
  f.g.buildIndex((n + 1) * (n + 1));
  return f;
}

}  // namespace

EndpointFamily squareGrid(int n) {
  EndpointFamily f = latticeSquare(n);
  for (int iy = 0; iy <= n; ++iy) {
    f.sources.push_back(iy * (n + 1));
    f.targets.push_back(iy * (n + 1) + n);
  }
  return f;
}

EndpointFamily squareGridTopBottom(int n) {
  EndpointFamily f = latticeSquare(n);
  for (int ix = 0; ix <= n; ++ix) {
    f.sources.push_back(ix);
    f.targets.push_back(n * (n + 1) + ix);
  }
  return f;
}

}  // namespace modlab
