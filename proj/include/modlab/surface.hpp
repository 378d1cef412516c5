// Surface mesh: a polygonal cell complex with chart-tagged vertices, used for
// the doubled cusp region with pillowcases glued along dyadic slits.
//
// Construction outline:
//   * base chart: the region {0 <= t <= 1-h, 0 <= y <= f(t)} meshed in columns
//     of width h; each column is stacked unit-height cells capped by a
//     trapezoid under the piecewise-linear interpolant of f.
//   * the chart is doubled (top/bottom copies welded along y=0 and y=f(t)).
//   * for every slit the top copy is cut open along {t} x [0, len]; a doubled
//     square (pillowcase) of side 2^-m, itself cut open along a matching
//     boundary slit, is welded in by arc length from the shared endpoint.
//
// h must be a power of two with h <= 2^-(M+1) so that every slit abscissa is a
// grid line and every slit is a union of mesh edges.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "modlab/dyadic.hpp"
#include "modlab/graph.hpp"

namespace modlab {

enum class ChartKind : std::uint8_t { BaseTop = 0, BaseBottom = 1, PillowTop = 2, PillowBottom = 3 };

struct ChartId {
  ChartKind kind = ChartKind::BaseTop;
  std::int16_t level = 0;   // pillowcase slit level m, 0 for base charts
  std::int32_t numer = 0;   // pillowcase slit numerator i, 0 for base charts

  bool isBase() const { return kind == ChartKind::BaseTop || kind == ChartKind::BaseBottom; }
  std::string label() const;
};

// Vertex flags.
inline constexpr std::uint8_t kVertexSeam = 1;       // on a doubling seam
inline constexpr std::uint8_t kVertexSlit = 2;       // on a slit welding interface
inline constexpr std::uint8_t kVertexBoundary = 4;   // on the outer truncation boundary
inline constexpr std::uint8_t kVertexCusp = 8;

struct SurfaceMesh {
  struct Vertex {
    ChartId chart;     // representative chart (base charts win over pillowcases)
    double u = 0, v = 0;
    std::uint8_t flags = 0;
  };
  struct Cell {
    std::vector<std::int32_t> loop;  // corner vertex ids, no repeats
    double area = 0;
    ChartId chart;
  };
  struct Edge {
    std::int32_t a = 0, b = 0;  // a < b
    double len = 0;
    std::int32_t cellCount = 0;  // 0 for metric shortcut edges
  };
  // One welded slit interface: interior points are vertex pairs (two prime-end
  // sides), endpoints are single vertices shared by both sides.
  struct SlitInterface {
    DyadicSlit slit;
    std::int32_t endBottom = -1;                      // shared endpoint at arc 0
    std::int32_t endTop = -1;                         // shared endpoint at arc len
    std::vector<double> interiorArcs;                 // arc-length positions, increasing
    std::vector<std::array<std::int32_t, 2>> interiorPairs;  // [left/top-case, right/bottom-case]
  };

  // edges[0 .. complexEdgeCount) are cell-complex edges; the rest are straight
  // in-chart shortcut segments that sharpen the graph metric toward the
  // intrinsic length metric (a pure 4-neighbor skeleton measures taxicab
  // distance in flat charts, off by a constant factor).
  std::vector<Vertex> verts;
  std::vector<Cell> cells;
  std::vector<Edge> edges;
  std::int64_t complexEdgeCount = 0;
  std::vector<SlitInterface> slits;

  // CSR adjacency, parallel arrays; adjEdge maps to the edge array.
  std::vector<std::int32_t> adjOff;
  std::vector<std::int32_t> adjVert;
  std::vector<double> adjLen;
  std::vector<std::int32_t> adjEdge;

  std::vector<double> dualArea;      // per-vertex share of cell areas (partition)
  std::vector<double> edgeDualLen;   // per-edge transversal extent of the dual face

  int depthM = 0;
  double h = 0;
  int cusp = -1;
  double totalArea = 0;
  std::vector<std::int32_t> boundaryLoop;  // truncation boundary cycle (vertex ids)

  // Combinatorial invariant of the cell complex (shortcut edges excluded).
  std::int64_t eulerCharacteristic() const {
    return static_cast<std::int64_t>(verts.size()) - complexEdgeCount +
           static_cast<std::int64_t>(cells.size());
  }
  int edgeIndex(int a, int b) const;  // first edge between a and b, -1 if absent
  void buildAdjacency();              // rebuilds the CSR index over all edges
};

// Standalone doubled pillowcase for a slit (used by tests; glueSurface builds
// its own copies).  Sphere complex: no boundary, Euler characteristic 2.
std::shared_ptr<SurfaceMesh> buildPillowcase(const DyadicSlit& slit, double h);

// Full glued surface at truncation depth M and grid h.  Throws
// std::invalid_argument unless h = 2^-K with K >= M+1 (K >= 1 for M = 0).
std::shared_ptr<SurfaceMesh> buildSurface(int depthM, double h);

// Solver-facing view of the mesh: vertex measure = dual area, edge area = dual
// face extent for cell-complex edges and 0 for metric shortcuts (they carry
// length but no transversal area, so cut families never charge them).
WeightedGraph surfaceGraph(const SurfaceMesh& mesh);

// Base-chart area of the trapezoid mesh under the PL interpolant of f over
// [0, 1-h]: sum_j h*(f(jh)+f((j+1)h))/2.  Reference value for area tests.
double baseChartAreaReference(double h);

// Validates h = 2^-K exactly and K >= minK; returns K.  Throws otherwise.
int gridExponent(double h, int minK);

}  // namespace modlab
