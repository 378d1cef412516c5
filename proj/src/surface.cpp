#include "modlab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>

namespace modlab {

namespace {

// ---------------------------------------------------------------- keys

// Lattice address of a vertex before welding.  side splits slit-interior
// vertices of the top base copy into their two prime-end sides.
struct VKey {
  std::uint8_t kind = 0;
  std::int16_t level = 0;
  std::int32_t numer = 0;
  std::int32_t ix = 0;  // base: line index; pillow: x-line index
  std::int32_t iy = 0;  // base: rung index in the line ladder; pillow: y-line index
  std::uint8_t side = 0;  // 0 none, 1 left of slit, 2 right of slit

  auto operator<=>(const VKey&) const = default;
};

constexpr std::uint8_t kSideNone = 0, kSideLeft = 1, kSideRight = 2;

// Edge-identity tags.  A cell side on a doubling seam is shared between the
// two copies (tag 0); a slit side is shared between one base prime end and one
// pillowcase copy (tags 1/2); everything else stays private to its copy so a
// front edge is never merged with its mirror even when both endpoints lie on
// seams (near the cusp whole ladder rungs do).
constexpr std::uint8_t kTagShared = 0, kTagTopCopy = 3, kTagBottomCopy = 4;

double polygonArea(const std::vector<std::array<double, 2>>& uv) {
  double s = 0;
  for (std::size_t k = 0; k < uv.size(); ++k) {
    const auto& a = uv[k];
    const auto& b = uv[(k + 1) % uv.size()];
    s += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * std::abs(s);
}

// ---------------------------------------------------------------- assembler

// Collects chart-local cells, welds vertices via union-find, then produces the
// final SurfaceMesh with derived structures (edges, adjacency, dual measures).
class Assembler {
 public:
  int vertexId(const VKey& key, double u, double v) {
    auto it = byKey_.find(key);
    if (it != byKey_.end()) return it->second;
    const int id = static_cast<int>(vu_.size());
    byKey_.emplace(key, id);
    vu_.push_back(u);
    vv_.push_back(v);
    vchart_.push_back(currentChart_);
    vflags_.push_back(0);
    parent_.push_back(id);
    return id;
  }

  void setChart(ChartId c) { currentChart_ = c; }

  // keys/uv describe the corner loop; sideTag[k] labels the side from corner k
  // to corner k+1 (slit-side copies get distinct tags so parallel edges stay
  // distinct).  Consecutive duplicate keys are dropped.
  void emitCell(const std::vector<VKey>& keys, const std::vector<std::array<double, 2>>& uv,
                const std::vector<std::uint8_t>& sideTag) {
    RawCell c;
    c.chart = currentChart_;
    const std::size_t n = keys.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (keys[k] == keys[(k + 1) % n]) continue;  // degenerate corner
      c.verts.push_back(vertexId(keys[k], uv[k][0], uv[k][1]));
      c.uv.push_back(uv[k]);
      c.tag.push_back(sideTag.empty() ? kSideNone : sideTag[k]);
    }
    if (c.verts.size() < 3) throw std::logic_error("emitCell: degenerate loop");
    c.area = polygonArea(c.uv);
    if (!(c.area > 0)) throw std::logic_error("emitCell: nonpositive area");
    cells_.push_back(std::move(c));
  }

  void weld(const VKey& a, const VKey& b, std::uint8_t flag = 0) {
    welds_.push_back({lookup(a), lookup(b), flag});
  }

  void mark(const VKey& a, std::uint8_t flag) { vflags_[lookup(a)] |= flag; }

  bool hasKey(const VKey& a) const { return byKey_.count(a) != 0; }

  // Valid after finalize().
  int finalId(const VKey& a) const { return remap_[findRoot(lookup(a))]; }

  std::shared_ptr<SurfaceMesh> finalize(int depthM, double h);

 private:
  struct RawCell {
    ChartId chart;
    std::vector<int> verts;
    std::vector<std::array<double, 2>> uv;
    std::vector<std::uint8_t> tag;
    double area = 0;
  };
  struct Weld {
    int a, b;
    std::uint8_t flag;
  };

  int lookup(const VKey& k) const {
    auto it = byKey_.find(k);
    if (it == byKey_.end()) throw std::logic_error("Assembler: unknown vertex key");
    return it->second;
  }
  int findRoot(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }
  void unite(int a, int b) {
    a = findRoot(a);
    b = findRoot(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // smaller creation id becomes the root
    parent_[b] = a;
  }

  std::map<VKey, int> byKey_;
  std::vector<double> vu_, vv_;
  std::vector<ChartId> vchart_;
  std::vector<std::uint8_t> vflags_;
  mutable std::vector<int> parent_;
  std::vector<RawCell> cells_;
  std::vector<Weld> welds_;
  std::vector<int> remap_;
  ChartId currentChart_;
};

std::shared_ptr<SurfaceMesh> Assembler::finalize(int depthM, double h) {
  for (const auto& w : welds_) {
    unite(w.a, w.b);
    if (w.flag) {
      vflags_[w.a] |= w.flag;
      vflags_[w.b] |= w.flag;
    }
  }

  auto mesh = std::make_shared<SurfaceMesh>();
  mesh->depthM = depthM;
  mesh->h = h;

  // Final ids in creation order of the union root: the earliest-created member
  // supplies coordinates and chart (base charts are created first, so welded
  // interface vertices report base provenance).
  const int nRaw = static_cast<int>(vu_.size());
  remap_.assign(nRaw, -1);
  for (int v = 0; v < nRaw; ++v) {
    const int r = findRoot(v);
    if (remap_[r] < 0) {
      remap_[r] = static_cast<int>(mesh->verts.size());
      mesh->verts.push_back({vchart_[r], vu_[r], vv_[r], 0});
    }
    remap_[v] = remap_[r];
    mesh->verts[remap_[r]].flags |= vflags_[v];
  }

  // Cells with remapped corner loops.
  mesh->cells.reserve(cells_.size());
  for (const auto& rc : cells_) {
    SurfaceMesh::Cell c;
    c.chart = rc.chart;
    c.area = rc.area;
    c.loop.reserve(rc.verts.size());
    for (int v : rc.verts) c.loop.push_back(remap_[findRoot(v)]);
    for (std::size_t k = 0; k < c.loop.size(); ++k)
      for (std::size_t l = k + 1; l < c.loop.size(); ++l)
        if (c.loop[k] == c.loop[l]) throw std::logic_error("finalize: repeated corner after weld");
    mesh->totalArea += c.area;
    mesh->cells.push_back(std::move(c));
  }

  // Edges from cell sides; the side tag keeps the two copies of a fully
  // degenerate slit opening (no interior vertices) distinct.
  struct EKey {
    int a, b;
    std::uint8_t tag;
    auto operator<=>(const EKey&) const = default;
  };
  std::map<EKey, int> edgeOf;
  for (std::size_t ci = 0; ci < cells_.size(); ++ci) {
    const auto& rc = cells_[ci];
    const auto& loop = mesh->cells[ci].loop;
    const std::size_t n = loop.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t k2 = (k + 1) % n;
      int a = loop[k], b = loop[k2];
      const double len = std::hypot(rc.uv[k2][0] - rc.uv[k][0], rc.uv[k2][1] - rc.uv[k][1]);
      if (a > b) std::swap(a, b);
      EKey ek{a, b, rc.tag[k]};
      auto it = edgeOf.find(ek);
      int ei;
      if (it == edgeOf.end()) {
        ei = static_cast<int>(mesh->edges.size());
        edgeOf.emplace(ek, ei);
        mesh->edges.push_back({a, b, len, 0});
        mesh->edgeDualLen.push_back(0);
      } else {
        ei = it->second;
        if (std::abs(mesh->edges[ei].len - len) > 1e-12 * (1.0 + len))
          throw std::logic_error("finalize: welded edge length mismatch");
      }
      mesh->edges[ei].cellCount += 1;
      mesh->edgeDualLen[ei] += rc.area / (2.0 * len);
    }
  }
  for (const auto& e : mesh->edges)
    if (e.cellCount < 1 || e.cellCount > 2) throw std::logic_error("finalize: non-manifold edge");
  mesh->complexEdgeCount = static_cast<std::int64_t>(mesh->edges.size());

  // Dual vertex areas: equal share of each incident cell.
  mesh->dualArea.assign(mesh->verts.size(), 0.0);
  for (const auto& c : mesh->cells) {
    const double share = c.area / static_cast<double>(c.loop.size());
    for (int v : c.loop) mesh->dualArea[v] += share;
  }

  // Boundary cycle (edges incident to exactly one cell).
  std::vector<int> bEdges;
  for (int ei = 0; ei < static_cast<int>(mesh->edges.size()); ++ei)
    if (mesh->edges[ei].cellCount == 1) bEdges.push_back(ei);
  if (!bEdges.empty()) {
    std::map<int, std::vector<int>> at;  // vertex -> boundary edge ids
    for (int ei : bEdges) {
      at[mesh->edges[ei].a].push_back(ei);
      at[mesh->edges[ei].b].push_back(ei);
    }
    for (const auto& [v, es] : at)
      if (es.size() != 2) throw std::logic_error("finalize: boundary is not a disjoint cycle union");
    std::vector<char> used(mesh->edges.size(), 0);
    int v0 = at.begin()->first, v = v0, prevEdge = -1;
    std::size_t consumed = 0;
    do {
      mesh->boundaryLoop.push_back(v);
      const auto& es = at[v];
      const int ei = (es[0] != prevEdge) ? es[0] : es[1];
      if (used[ei]) throw std::logic_error("finalize: boundary trace revisited an edge");
      used[ei] = 1;
      ++consumed;
      v = (mesh->edges[ei].a == v) ? mesh->edges[ei].b : mesh->edges[ei].a;
      prevEdge = ei;
    } while (v != v0);
    if (consumed != bEdges.size()) throw std::logic_error("finalize: boundary has more than one cycle");
  }

  return mesh;
}

// ---------------------------------------------------------------- base chart

struct LineLadder {
  double top = 0;        // f(t_j)
  int kd = 0;            // largest k with k*h <= top
  bool exactTop = false;  // kd*h == top exactly
  // ladder heights: k*h for k = 0..kd, plus top when !exactTop
  int topIdx() const { return exactTop ? kd : kd + 1; }
  double height(int k, double h) const {
    if (k <= kd) return k * h;
    return top;
  }
};

LineLadder makeLadder(int j, double h) {
  LineLadder L;
  const double t = j * h;
  L.top = CuspProfile::evalUnchecked(t);
  double q = std::floor(L.top / h);
  int kd = static_cast<int>(q);
  while (kd > 0 && kd * h > L.top) --kd;
  while ((kd + 1) * h <= L.top) ++kd;
  L.kd = kd;
  L.exactTop = (kd * h == L.top);
  return L;
}

}  // namespace

std::string ChartId::label() const {
  char buf[48];
  switch (kind) {
    case ChartKind::BaseTop: return "base-top";
    case ChartKind::BaseBottom: return "base-bottom";
    case ChartKind::PillowTop:
      std::snprintf(buf, sizeof buf, "pillow-top(%d,%d)", static_cast<int>(level), numer);
      return buf;
    case ChartKind::PillowBottom:
      std::snprintf(buf, sizeof buf, "pillow-bottom(%d,%d)", static_cast<int>(level), numer);
      return buf;
  }
  return "?";
}

int SurfaceMesh::edgeIndex(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (int o = adjOff[a]; o < adjOff[a + 1]; ++o)
    if (adjVert[o] == b) return adjEdge[o];
  return -1;
}

void SurfaceMesh::buildAdjacency() {
  const int nv = static_cast<int>(verts.size());
  std::vector<std::vector<std::pair<int, int>>> nbr(nv);  // (neighbor, edge id)
  for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
    nbr[edges[ei].a].push_back({edges[ei].b, ei});
    nbr[edges[ei].b].push_back({edges[ei].a, ei});
  }
  adjOff.assign(nv + 1, 0);
  for (int v = 0; v < nv; ++v) {
    std::sort(nbr[v].begin(), nbr[v].end());
    adjOff[v + 1] = adjOff[v] + static_cast<int>(nbr[v].size());
  }
  adjVert.resize(adjOff[nv]);
  adjLen.resize(adjOff[nv]);
  adjEdge.resize(adjOff[nv]);
  for (int v = 0; v < nv; ++v) {
    int o = adjOff[v];
    for (const auto& [w, ei] : nbr[v]) {
      adjVert[o] = w;
      adjLen[o] = edges[ei].len;
      adjEdge[o] = ei;
      ++o;
    }
  }
}

int gridExponent(double h, int minK) {
  if (!(h > 0) || h > 0.5) throw std::invalid_argument("grid spacing must be in (0, 1/2]");
  int e = 0;
  const double m = std::frexp(h, &e);
  if (m != 0.5) throw std::invalid_argument("grid spacing must be a power of two");
  const int K = 1 - e;
  if (K < minK) throw std::invalid_argument("grid spacing too coarse for the slit depth");
  return K;
}

double baseChartAreaReference(double h) {
  const int K = gridExponent(h, 1);
  const int N = (1 << K) - 1;
  double area = 0;
  for (int j = 0; j < N; ++j)
    area += h * (CuspProfile::evalUnchecked(j * h) + CuspProfile::evalUnchecked((j + 1) * h)) / 2.0;
  return area;
}

WeightedGraph surfaceGraph(const SurfaceMesh& mesh) {
  WeightedGraph g;
  g.edges.reserve(mesh.edges.size());
  for (const auto& e : mesh.edges) g.edges.push_back({e.a, e.b, e.len});
  g.vertexMeasure = mesh.dualArea;
  g.edgeArea.assign(mesh.edges.size(), 0.0);
  for (std::int64_t ei = 0; ei < mesh.complexEdgeCount; ++ei)
    g.edgeArea[ei] = mesh.edgeDualLen[ei];
  g.buildIndex(static_cast<int>(mesh.verts.size()));
  return g;
}

namespace {

// Emits both copies of one doubled square of side 2^-m, grid h, with the
// boundary slit J = [0, len] x {0}.  openJ leaves the interior of J unwelded
// (two prime-end sides) for gluing; otherwise the double is a closed sphere.
struct PillowPlan {
  std::vector<double> xs;
  int lenIdx = 0;  // index of len in xs
  int rows = 0;    // y cells
};

PillowPlan planPillow(const DyadicSlit& slit, double h, int K) {
  PillowPlan P;
  const int sCount = 1 << (K - slit.level);
  for (int k = 0; k <= sCount; ++k) P.xs.push_back(k * h);
  P.rows = sCount;
  const double len = slit.length();
  auto it = std::lower_bound(P.xs.begin(), P.xs.end(), len);
  if (it == P.xs.end() || *it != len) it = P.xs.insert(it, len);
  P.lenIdx = static_cast<int>(it - P.xs.begin());
  if (P.lenIdx == 0) throw std::logic_error("planPillow: empty slit");
  return P;
}

void emitPillow(Assembler& A, const DyadicSlit& slit, const PillowPlan& P, double h, bool openJ) {
  const double len = slit.length();
  const int X = static_cast<int>(P.xs.size()) - 1;
  for (int copy = 0; copy < 2; ++copy) {
    const ChartKind kind = copy == 0 ? ChartKind::PillowTop : ChartKind::PillowBottom;
    A.setChart({kind, static_cast<std::int16_t>(slit.level), static_cast<std::int32_t>(slit.numer)});
    auto tagOf = [&](int ix1, int iy1, int ix2, int iy2) -> std::uint8_t {
      if (iy1 == iy2 && iy1 == 0) {
        if (openJ && std::max(ix1, ix2) <= P.lenIdx)
          return copy == 0 ? kSideLeft : kSideRight;  // side of the opened slit
        return kTagShared;
      }
      if (iy1 == iy2 && iy1 == P.rows) return kTagShared;
      if (ix1 == ix2 && (ix1 == 0 || ix1 == X)) return kTagShared;
      return copy == 0 ? kTagTopCopy : kTagBottomCopy;
    };
    for (int ix = 0; ix < X; ++ix) {
      for (int iy = 0; iy < P.rows; ++iy) {
        auto key = [&](int gx, int gy) {
          return VKey{static_cast<std::uint8_t>(kind), static_cast<std::int16_t>(slit.level),
                      static_cast<std::int32_t>(slit.numer), gx, gy, kSideNone};
        };
        const std::vector<VKey> keys = {key(ix, iy), key(ix + 1, iy), key(ix + 1, iy + 1), key(ix, iy + 1)};
        const std::vector<std::array<double, 2>> uv = {{P.xs[ix], iy * h},
                                                       {P.xs[ix + 1], iy * h},
                                                       {P.xs[ix + 1], (iy + 1) * h},
                                                       {P.xs[ix], (iy + 1) * h}};
        const std::vector<std::uint8_t> tags = {tagOf(ix, iy, ix + 1, iy),
                                                tagOf(ix + 1, iy, ix + 1, iy + 1),
                                                tagOf(ix + 1, iy + 1, ix, iy + 1),
                                                tagOf(ix, iy + 1, ix, iy)};
        A.emitCell(keys, uv, tags);
      }
    }
  }
  // Weld the two copies along the square boundary; skip the interior of J when
  // the pillowcase is being cut open for gluing.
  auto kt = [&](int gx, int gy) {
    return VKey{static_cast<std::uint8_t>(ChartKind::PillowTop), static_cast<std::int16_t>(slit.level),
                static_cast<std::int32_t>(slit.numer), gx, gy, kSideNone};
  };
  auto kb = [&](int gx, int gy) {
    return VKey{static_cast<std::uint8_t>(ChartKind::PillowBottom), static_cast<std::int16_t>(slit.level),
                static_cast<std::int32_t>(slit.numer), gx, gy, kSideNone};
  };
  for (int ix = 0; ix <= X; ++ix) {
    const bool jInterior = ix > 0 && P.xs[ix] < len;
    if (!(openJ && jInterior)) A.weld(kt(ix, 0), kb(ix, 0), kVertexSeam);
    A.weld(kt(ix, P.rows), kb(ix, P.rows), kVertexSeam);
  }
  for (int iy = 1; iy < P.rows; ++iy) {
    A.weld(kt(0, iy), kb(0, iy), kVertexSeam);
    A.weld(kt(X, iy), kb(X, iy), kVertexSeam);
  }
  // Mark J.
  for (int ix = 0; ix <= P.lenIdx; ++ix) {
    A.mark(kt(ix, 0), kVertexSlit);
    A.mark(kb(ix, 0), kVertexSlit);
  }
}

struct BasePlan {
  int N = 0;
  std::vector<LineLadder> lines;
  std::vector<int> slitAtLine;    // -1 or slit ordinal
  std::vector<int> slitTopIdx;    // per line, valid when slitAtLine >= 0
};

BasePlan planBase(int depthM, double h, int K, const std::vector<DyadicSlit>& slits) {
  BasePlan B;
  B.N = (1 << K) - 1;
  B.lines.resize(B.N + 1);
  for (int j = 0; j <= B.N; ++j) B.lines[j] = makeLadder(j, h);
  B.slitAtLine.assign(B.N + 1, -1);
  B.slitTopIdx.assign(B.N + 1, -1);
  for (std::size_t si = 0; si < slits.size(); ++si) {
    const auto& s = slits[si];
    const int j = static_cast<int>(s.numer << (K - s.level));
    if (j <= 0 || j >= B.N) throw std::logic_error("planBase: slit line outside the chart");
    B.slitAtLine[j] = static_cast<int>(si);
    const double len = s.length();
    int topIdx;
    if (s.lengthIsProfile()) {
      topIdx = B.lines[j].topIdx();
      if (B.lines[j].height(topIdx, h) != len) throw std::logic_error("planBase: slit top mismatch");
    } else {
      topIdx = 1 << (K - s.level);
      if (topIdx > B.lines[j].kd) throw std::logic_error("planBase: slit exceeds the profile");
    }
    B.slitTopIdx[j] = topIdx;
  }
  (void)depthM;
  return B;
}

// Emits both copies of the base chart.  Slit lines of the top copy are split
// into left/right prime-end sides over the slit span.
void emitBase(Assembler& A, const BasePlan& B, double h) {
  struct Corner {
    int line, rung;
  };
  for (int copy = 0; copy < 2; ++copy) {
    const ChartKind kind = copy == 0 ? ChartKind::BaseTop : ChartKind::BaseBottom;
    A.setChart({kind, 0, 0});
    for (int j = 0; j < B.N; ++j) {
      const auto& lj = B.lines[j];
      const auto& lr = B.lines[j + 1];
      auto key = [&](const Corner& c) {
        std::uint8_t side = kSideNone;
        if (copy == 0 && B.slitAtLine[c.line] >= 0) {
          const int L = B.slitTopIdx[c.line];
          if (c.rung > 0 && c.rung < L) side = (c.line == j) ? kSideRight : kSideLeft;
        }
        return VKey{static_cast<std::uint8_t>(kind), 0, 0, c.line, c.rung, side};
      };
      auto tagOf = [&](const Corner& a, const Corner& b) -> std::uint8_t {
        if (a.line == b.line) {  // vertical side
          if (copy == 0 && B.slitAtLine[a.line] >= 0 &&
              std::max(a.rung, b.rung) <= B.slitTopIdx[a.line])
            return (a.line == j) ? kSideRight : kSideLeft;
          return copy == 0 ? kTagTopCopy : kTagBottomCopy;
        }
        if (a.rung == 0 && b.rung == 0) return kTagShared;  // y = 0 seam
        if (a.rung == B.lines[a.line].topIdx() && b.rung == B.lines[b.line].topIdx())
          return kTagShared;  // chord along the profile seam
        return copy == 0 ? kTagTopCopy : kTagBottomCopy;
      };
      auto emit = [&](const std::vector<Corner>& cs) {
        const std::size_t n = cs.size();
        std::vector<VKey> keys(n);
        std::vector<std::array<double, 2>> uv(n);
        std::vector<std::uint8_t> tags(n);
        for (std::size_t k = 0; k < n; ++k) {
          keys[k] = key(cs[k]);
          uv[k] = {cs[k].line * h, B.lines[cs[k].line].height(cs[k].rung, h)};
          tags[k] = tagOf(cs[k], cs[(k + 1) % n]);
        }
        A.emitCell(keys, uv, tags);
      };
      // full squares below the staircase level of the left line
      for (int k = 0; k < lj.kd; ++k)
        emit({{j, k}, {j + 1, k}, {j + 1, k + 1}, {j, k + 1}});
      // top cell under the PL interpolant chord
      const int kb = lj.kd;
      std::vector<Corner> cs = {{j, kb}, {j + 1, kb}};
      if ((kb + 1) * h < lr.top) {
        cs.push_back({j + 1, kb + 1});
        if ((kb + 2) * h < lr.top) throw std::logic_error("emitBase: profile climbed two rungs");
      }
      cs.push_back({j + 1, lr.topIdx()});
      cs.push_back({j, lj.topIdx()});
      emit(cs);
    }
  }
  // Weld the two copies along y = 0 and along the PL top curve.
  for (int j = 0; j <= B.N; ++j) {
    auto kt = [&](int rung) {
      return VKey{static_cast<std::uint8_t>(ChartKind::BaseTop), 0, 0, j, rung, kSideNone};
    };
    auto kb = [&](int rung) {
      return VKey{static_cast<std::uint8_t>(ChartKind::BaseBottom), 0, 0, j, rung, kSideNone};
    };
    A.weld(kt(0), kb(0), kVertexSeam);
    const int ti = B.lines[j].topIdx();
    if (ti != 0) A.weld(kt(ti), kb(ti), kVertexSeam);
  }
}

// ------------------------------------------------------- metric shortcuts
//
// Straight in-chart segments between lattice vertices up to 3 cells apart
// (coprime offsets, both components nonzero).  They refine the graph metric
// from taxicab toward the intrinsic Euclidean length metric of each chart;
// flat-patch ball areas come out within about one percent of the continuum
// value.  Segments never cross an open slit, never leave the region below the
// profile, and stay inside a single chart copy.

constexpr int kShortcutReach = 3;

void appendPillowShortcuts(Assembler& A, const DyadicSlit& slit, const PillowPlan& P, double h,
                           SurfaceMesh& mesh) {
  const int X = static_cast<int>(P.xs.size()) - 1;
  for (int copy = 0; copy < 2; ++copy) {
    const ChartKind kind = copy == 0 ? ChartKind::PillowTop : ChartKind::PillowBottom;
    auto key = [&](int ix, int iy) {
      return VKey{static_cast<std::uint8_t>(kind), static_cast<std::int16_t>(slit.level),
                  static_cast<std::int32_t>(slit.numer), ix, iy, kSideNone};
    };
    for (int ix = 0; ix <= X; ++ix)
      for (int iy = 0; iy <= P.rows; ++iy)
        for (int di = 1; di <= kShortcutReach && ix + di <= X; ++di)
          for (int dj = -kShortcutReach; dj <= kShortcutReach; ++dj) {
            if (dj == 0 || std::gcd(di, std::abs(dj)) != 1) continue;
            const int iy2 = iy + dj;
            if (iy2 < 0 || iy2 > P.rows) continue;
            int a = A.finalId(key(ix, iy));
            int b = A.finalId(key(ix + di, iy2));
            if (a > b) std::swap(a, b);
            mesh.edges.push_back({a, b, std::hypot(P.xs[ix + di] - P.xs[ix], dj * h), 0});
            mesh.edgeDualLen.push_back(0);
          }
  }
}

void appendBaseShortcuts(Assembler& A, const BasePlan& B, double h, SurfaceMesh& mesh) {
  for (int copy = 0; copy < 2; ++copy) {
    const ChartKind kind = copy == 0 ? ChartKind::BaseTop : ChartKind::BaseBottom;
    // a slit-interior endpoint belongs to the prime-end side the segment
    // leaves from
    auto key = [&](int line, int rung, int otherLine) {
      std::uint8_t side = kSideNone;
      if (copy == 0 && B.slitAtLine[line] >= 0) {
        const int L = B.slitTopIdx[line];
        if (rung > 0 && rung < L) side = otherLine > line ? kSideRight : kSideLeft;
      }
      return VKey{static_cast<std::uint8_t>(kind), 0, 0, line, rung, side};
    };
    for (int j = 0; j <= B.N; ++j)
      for (int k = 0; k <= B.lines[j].kd; ++k)
        for (int di = 1; di <= kShortcutReach && j + di <= B.N; ++di)
          for (int dj = -kShortcutReach; dj <= kShortcutReach; ++dj) {
            if (dj == 0 || std::gcd(di, std::abs(dj)) != 1) continue;
            const int j2 = j + di, k2 = k + dj;
            if (k2 < 0 || k2 > B.lines[j2].kd) continue;
            bool ok = true;
            for (int m = 1; m < di && ok; ++m) {
              const double ym = (k + static_cast<double>(dj) * m / di) * h;
              const auto& lm = B.lines[j + m];
              if (ym > lm.top) {
                ok = false;  // would poke out through the profile seam
              } else if (copy == 0 && B.slitAtLine[j + m] >= 0) {
                const double slitLen = lm.height(B.slitTopIdx[j + m], h);
                if (ym < slitLen) ok = false;  // would cross the open slit
              }
            }
            if (!ok) continue;
            int a = A.finalId(key(j, k, j2));
            int b = A.finalId(key(j2, k2, j));
            if (a > b) std::swap(a, b);
            mesh.edges.push_back(
                {a, b, h * std::hypot(static_cast<double>(di), static_cast<double>(dj)), 0});
            mesh.edgeDualLen.push_back(0);
          }
  }
}

}  // namespace

std::shared_ptr<SurfaceMesh> buildPillowcase(const DyadicSlit& slit, double h) {
  if (slit.level < 1) throw std::invalid_argument("buildPillowcase: slit level must be >= 1");
  const int K = gridExponent(h, slit.level + 1);
  Assembler A;
  const PillowPlan P = planPillow(slit, h, K);
  emitPillow(A, slit, P, h, /*openJ=*/false);
  auto mesh = A.finalize(slit.level, h);
  appendPillowShortcuts(A, slit, P, h, *mesh);
  mesh->buildAdjacency();
  return mesh;
}

std::shared_ptr<SurfaceMesh> buildSurface(int depthM, double h) {
  if (depthM < 0 || depthM > 20) throw std::invalid_argument("buildSurface: depth must be in [0,20]");
  const int K = gridExponent(h, depthM == 0 ? 1 : depthM + 1);
  const std::vector<DyadicSlit> slits = enumerateSlits(depthM);

  Assembler A;
  const BasePlan B = planBase(depthM, h, K, slits);
  emitBase(A, B, h);
  std::vector<PillowPlan> plans;
  plans.reserve(slits.size());
  for (const auto& s : slits) {
    plans.push_back(planPillow(s, h, K));
    emitPillow(A, s, plans.back(), h, /*openJ=*/true);
  }

  // Weld each slit to its pillowcase by arc length from the shared endpoint:
  // base arc = height above y=0, pillowcase arc = distance from the corner
  // (0,0) along the bottom edge.  Left side of the slit joins the top-copy
  // square, right side the bottom-copy square.
  for (std::size_t si = 0; si < slits.size(); ++si) {
    const auto& s = slits[si];
    const int j = static_cast<int>(s.numer << (K - s.level));
    const int L = B.slitTopIdx[j];
    auto baseKey = [&](int rung, std::uint8_t side) {
      return VKey{static_cast<std::uint8_t>(ChartKind::BaseTop), 0, 0, j, rung, side};
    };
    auto pillowKey = [&](ChartKind kind, int ix) {
      return VKey{static_cast<std::uint8_t>(kind), static_cast<std::int16_t>(s.level),
                  static_cast<std::int32_t>(s.numer), ix, 0, kSideNone};
    };
    if (plans[si].lenIdx != L) throw std::logic_error("buildSurface: slit arc ladders disagree");
    A.weld(baseKey(0, kSideNone), pillowKey(ChartKind::PillowTop, 0), kVertexSlit);
    A.weld(baseKey(L, kSideNone), pillowKey(ChartKind::PillowTop, L), kVertexSlit);
    for (int k = 1; k < L; ++k) {
      A.weld(baseKey(k, kSideLeft), pillowKey(ChartKind::PillowTop, k), kVertexSlit);
      A.weld(baseKey(k, kSideRight), pillowKey(ChartKind::PillowBottom, k), kVertexSlit);
    }
  }

  // Flags on the outer truncation boundary and the cusp.
  for (int copy = 0; copy < 2; ++copy) {
    const auto kind = copy == 0 ? ChartKind::BaseTop : ChartKind::BaseBottom;
    for (int r = 0; r <= B.lines[B.N].topIdx(); ++r)
      A.mark(VKey{static_cast<std::uint8_t>(kind), 0, 0, B.N, r, kSideNone}, kVertexBoundary);
  }
  A.mark(VKey{static_cast<std::uint8_t>(ChartKind::BaseTop), 0, 0, 0, 0, kSideNone}, kVertexCusp);

  auto mesh = A.finalize(depthM, h);

  // Slit interface table with final vertex ids.
  for (std::size_t si = 0; si < slits.size(); ++si) {
    const auto& s = slits[si];
    const int j = static_cast<int>(s.numer << (K - s.level));
    const int L = B.slitTopIdx[j];
    SurfaceMesh::SlitInterface rec;
    rec.slit = s;
    rec.endBottom = A.finalId(VKey{static_cast<std::uint8_t>(ChartKind::BaseTop), 0, 0, j, 0, kSideNone});
    rec.endTop = A.finalId(VKey{static_cast<std::uint8_t>(ChartKind::BaseTop), 0, 0, j, L, kSideNone});
    for (int k = 1; k < L; ++k) {
      rec.interiorArcs.push_back(B.lines[j].height(k, h));
      rec.interiorPairs.push_back(
          {A.finalId(VKey{static_cast<std::uint8_t>(ChartKind::BaseTop), 0, 0, j, k, kSideLeft}),
           A.finalId(VKey{static_cast<std::uint8_t>(ChartKind::BaseTop), 0, 0, j, k, kSideRight})});
    }
    mesh->slits.push_back(std::move(rec));
  }

  appendBaseShortcuts(A, B, h, *mesh);
  for (std::size_t si = 0; si < slits.size(); ++si)
    appendPillowShortcuts(A, slits[si], plans[si], h, *mesh);
  mesh->buildAdjacency();

  for (int v = 0; v < static_cast<int>(mesh->verts.size()); ++v)
    if (mesh->verts[v].flags & kVertexCusp) mesh->cusp = v;
  if (mesh->cusp < 0) throw std::logic_error("buildSurface: lost the cusp vertex");
  for (int v : mesh->boundaryLoop)
    if (!(mesh->verts[v].flags & kVertexBoundary))
      throw std::logic_error("buildSurface: boundary cycle strayed from the truncation edge");
  return mesh;
}

}  // namespace modlab
