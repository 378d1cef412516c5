#pragma once

#include <memory>

#include "modlab/graph.hpp"
#include "modlab/surface.hpp"

namespace modlab {

// The glued surface crossed with the open interval (-2, 2) on a uniform
// vertical grid.  Vertex (v, l) sits at height z_l = -2 + (l+1)*hz; the two
// open ends carry no vertices.  Implicit 3-cells are (base cell) x (layer
// gap), so the control volume of a vertex is its base dual area times hz.
struct ProductMesh {
  std::shared_ptr<SurfaceMesh> base;
  double hz = 0;
  int layers = 0;

  WeightedGraph g;

  int id(int baseV, int layer) const { return layer * static_cast<int>(base->verts.size()) + baseV; }
  int baseOf(int pid) const { return pid % static_cast<int>(base->verts.size()); }
  int layerOf(int pid) const { return pid / static_cast<int>(base->verts.size()); }
  double zOf(int layer) const { return -2.0 + (layer + 1) * hz; }

  // The singular segment: the cusp line restricted to |z| <= 1.
  std::vector<int> continuumE() const;
};

// hz must be a power of two in (0, 1/2] so that z = +-1 land on grid layers.
ProductMesh buildProduct(std::shared_ptr<SurfaceMesh> base, double hz);

// Metric quotient that collapses the singular segment to one point.  Vertex
// ids are preserved for every vertex outside the segment; the class itself
// keeps the smallest member id.  Parallel edges into the class are reduced to
// the shortest representative per neighbor.
struct QuotientResult {
  WeightedGraph g;
  std::vector<int> toQuotient;  // product id -> quotient id
  int classId = -1;             // image of the collapsed segment
};

QuotientResult collapseContinuum(const ProductMesh& pm);

}  // namespace modlab
