#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "modlab/product.hpp"
#include "modlab/surface.hpp"

namespace modlab {

// Shortest round-trip decimal form (std::to_chars), so repeated runs emit
// byte-identical numeric fields.
std::string formatDouble(double v);

std::string isoTimestamp();

// RFC 4180 body (CRLF rows, quoting only where required) preceded by
// '#'-prefixed comment lines.  Volatile metadata like timestamps belongs in
// the comments; the column row and data rows must be reproducible.
class CsvWriter {
 public:
  CsvWriter(std::vector<std::string> comments, const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);
  std::string str() const;

 private:
  std::size_t width_;
  std::ostringstream out_;
};

void writeFile(const std::string& path, const std::string& content);
void ensureDir(const std::string& path);

// Geometric dumps.  The surface unfolds into 3-space: bottom copies mirror
// across the seam, pillowcases stack above their slit abscissa by level.
// Product dumps list vertices only; edges are the layered copies of the base
// complex plus vertical rungs, as noted in the file header.
std::string surfaceOff(const SurfaceMesh& mesh);
std::string productOff(const ProductMesh& pm);

}  // namespace modlab
