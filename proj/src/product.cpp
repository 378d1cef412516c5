#include "modlab/product.hpp"

#include <map>
#include <stdexcept>

namespace modlab {

std::vector<int> ProductMesh::continuumE() const {
  const int r = gridExponent(hz, 1);
  std::vector<int> out;
  for (int l = (1 << r) - 1; l <= 3 * (1 << r) - 1; ++l) out.push_back(id(base->cusp, l));
  return out;
}

ProductMesh buildProduct(std::shared_ptr<SurfaceMesh> base, double hz) {
  if (!base) throw std::invalid_argument("buildProduct: missing base surface");
  const int r = gridExponent(hz, 1);
  ProductMesh pm;
  pm.base = std::move(base);
  pm.hz = hz;
  pm.layers = 4 * (1 << r) - 1;

  const int nb = static_cast<int>(pm.base->verts.size());
  const int nbe = static_cast<int>(pm.base->edges.size());
  const int n = nb * pm.layers;

  pm.g.edges.reserve(static_cast<std::size_t>(pm.layers) * nbe +
                     static_cast<std::size_t>(pm.layers - 1) * nb);
  pm.g.edgeArea.reserve(pm.g.edges.capacity());
  for (int l = 0; l < pm.layers; ++l) {
    for (int e = 0; e < nbe; ++e) {
      const auto& be = pm.base->edges[e];
      pm.g.edges.push_back({pm.id(be.a, l), pm.id(be.b, l), be.len});
      pm.g.edgeArea.push_back(pm.base->edgeDualLen[e] * hz);
    }
    if (l + 1 < pm.layers)
      for (int v = 0; v < nb; ++v) {
        pm.g.edges.push_back({pm.id(v, l), pm.id(v, l + 1), hz});
        pm.g.edgeArea.push_back(pm.base->dualArea[v]);
      }
  }
  pm.g.vertexMeasure.resize(n);
  for (int l = 0; l < pm.layers; ++l)
    for (int v = 0; v < nb; ++v) pm.g.vertexMeasure[pm.id(v, l)] = pm.base->dualArea[v] * hz;
  pm.g.buildIndex(n);
  return pm;
}

QuotientResult collapseContinuum(const ProductMesh& pm) {
  QuotientResult q;
  const int n = pm.g.n();
  std::vector<char> inE(n, 0);
  q.classId = n;
  for (int v : pm.continuumE()) {
    inE[v] = 1;
    if (v < q.classId) q.classId = v;
  }
  if (q.classId == n) throw std::logic_error("collapseContinuum: empty segment");

  q.toQuotient.resize(n);
  for (int v = 0; v < n; ++v) q.toQuotient[v] = inE[v] ? q.classId : v;

  // Shortest representative per neighbor for edges absorbed into the class;
  // transversal areas of merged edges add up.
  std::map<std::pair<int, int>, std::pair<double, double>> intoClass;  // (a,b) -> (len, area)
  for (std::size_t ei = 0; ei < pm.g.edges.size(); ++ei) {
    const auto& e = pm.g.edges[ei];
    int a = q.toQuotient[e.a], b = q.toQuotient[e.b];
    if (a == b) continue;  // interior to the collapsed segment
    if (a != e.a || b != e.b) {
      if (a > b) std::swap(a, b);
      auto [it, fresh] = intoClass.try_emplace({a, b}, pm.g.edges[ei].len, pm.g.edgeArea[ei]);
      if (!fresh) {
        it->second.first = std::min(it->second.first, e.len);
        it->second.second += pm.g.edgeArea[ei];
      }
    } else {
      q.g.edges.push_back(e);
      q.g.edgeArea.push_back(pm.g.edgeArea[ei]);
    }
  }
  for (const auto& [ab, la] : intoClass) {
    q.g.edges.push_back({ab.first, ab.second, la.first});
    q.g.edgeArea.push_back(la.second);
  }

  q.g.vertexMeasure.assign(n, 0.0);
  for (int v = 0; v < n; ++v) q.g.vertexMeasure[q.toQuotient[v]] += pm.g.vertexMeasure[v];
  q.g.buildIndex(n);
  return q;
}

}  // namespace modlab
