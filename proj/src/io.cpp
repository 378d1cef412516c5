#include "modlab/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace modlab {

std::string formatDouble(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string isoTimestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvWriter::CsvWriter(std::vector<std::string> comments, const std::vector<std::string>& columns)
    : width_(columns.size()) {
  for (const auto& c : comments) out_ << "# " << c << "\r\n";
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) throw std::invalid_argument("CsvWriter: ragged row");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csvField(fields[i]);
  }
  out_ << "\r\n";
}

std::string CsvWriter::str() const { return out_.str(); }

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("short write: " + path);
}

void ensureDir(const std::string& path) { std::filesystem::create_directories(path); }

namespace {

// Unfolded 3-d placement for dumps: top base sheet in the z=0 plane, bottom
// sheet mirrored to v<0, pillowcase sheets floating above their slit abscissa
// at a height set by the level.
std::array<double, 3> place(const SurfaceMesh::Vertex& vx) {
  const ChartId& c = vx.chart;
  switch (c.kind) {
    case ChartKind::BaseTop:
      return {vx.u, vx.v, 0.0};
    case ChartKind::BaseBottom:
      return {vx.u, -vx.v, 0.0};
    default: {
      const double t = std::ldexp(static_cast<double>(c.numer), -c.level);
      const double lift = 0.2 * c.level + (c.kind == ChartKind::PillowBottom ? 0.1 : 0.0);
      return {t + vx.u, vx.v, lift};
    }
  }
}

}  // namespace

std::string surfaceOff(const SurfaceMesh& mesh) {
  std::ostringstream out;
  out << "OFF\n";
  out << "# doubled cusp surface, M=" << mesh.depthM << " h=" << formatDouble(mesh.h) << "\n";
  out << "# layout: bottom sheets mirrored across the seam, pillowcases lifted by level\n";
  out << "# vertex comments: chart / flags\n";
  out << mesh.verts.size() << ' ' << mesh.cells.size() << ' ' << mesh.complexEdgeCount << "\n";
  for (const auto& vx : mesh.verts) {
    const auto p = place(vx);
    out << formatDouble(p[0]) << ' ' << formatDouble(p[1]) << ' ' << formatDouble(p[2]) << " # "
        << vx.chart.label();
    if (vx.flags & kVertexCusp) out << " cusp";
    if (vx.flags & kVertexSeam) out << " seam";
    if (vx.flags & kVertexSlit) out << " slit";
    if (vx.flags & kVertexBoundary) out << " rim";
    out << "\n";
  }
  for (const auto& cell : mesh.cells) {
    out << cell.loop.size();
    for (auto v : cell.loop) out << ' ' << v;
    out << "\n";
  }
  return out.str();
}

std::string productOff(const ProductMesh& pm) {
  std::ostringstream out;
  out << "OFF\n";
  out << "# surface x interval, hz=" << formatDouble(pm.hz) << ", layers=" << pm.layers << "\n";
  out << "# vertices only: edges are per-layer copies of the surface complex plus\n";
  out << "# vertical rungs between consecutive layers of the same surface vertex\n";
  out << pm.g.n() << " 0 " << pm.g.edges.size() << "\n";
  for (int id = 0; id < pm.g.n(); ++id) {
    const auto p = place(pm.base->verts[static_cast<std::size_t>(pm.baseOf(id))]);
    out << formatDouble(p[0]) << ' ' << formatDouble(p[1]) << ' '
        << formatDouble(pm.zOf(pm.layerOf(id))) << " # lift=" << formatDouble(p[2]) << "\n";
  }
  return out.str();
}

}  // namespace modlab
