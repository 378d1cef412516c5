#include "modlab/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace modlab {

void WeightedGraph::buildIndex(int vertexCount) {
  for (const auto& e : edges)
    if (e.a < 0 || e.b < 0 || e.a >= vertexCount || e.b >= vertexCount || !(e.len > 0))
      throw std::invalid_argument("WeightedGraph: bad edge");
  std::vector<std::vector<std::pair<int, int>>> nbr(vertexCount);
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    nbr[edges[ei].a].push_back({edges[ei].b, ei});
    nbr[edges[ei].b].push_back({edges[ei].a, ei});
  }
  adjOff.assign(vertexCount + 1, 0);
  for (int v = 0; v < vertexCount; ++v) {
    std::sort(nbr[v].begin(), nbr[v].end());
    adjOff[v + 1] = adjOff[v] + static_cast<int>(nbr[v].size());
  }
  adjVert.resize(adjOff[vertexCount]);
  adjEdge.resize(adjOff[vertexCount]);
  adjLen.resize(adjOff[vertexCount]);
  for (int v = 0; v < vertexCount; ++v) {
    int o = adjOff[v];
    for (const auto& [w, ei] : nbr[v]) {
      adjVert[o] = w;
      adjEdge[o] = ei;
      adjLen[o] = edges[ei].len;
      ++o;
    }
  }
}

}  // namespace modlab
