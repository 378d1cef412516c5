#pragma once

#include <vector>

namespace modlab {

// Undirected weighted graph in CSR form with per-vertex and per-edge measures.
// Parallel edges are allowed and kept distinct.
struct WeightedGraph {
  struct Edge {
    int a = 0, b = 0;
    double len = 0;
  };

  std::vector<Edge> edges;
  std::vector<int> adjOff, adjVert, adjEdge;
  std::vector<double> adjLen;
  std::vector<double> vertexMeasure;  // control volume around each vertex
  std::vector<double> edgeArea;       // transversal (dual face) area of each edge

  int n() const { return static_cast<int>(adjOff.size()) - 1; }

  // Builds the CSR index from edges; measures must already be sized or empty.
  void buildIndex(int vertexCount);
};

}  // namespace modlab
