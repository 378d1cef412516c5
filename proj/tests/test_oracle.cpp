#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "modlab/gridcases.hpp"
#include "modlab/oracle.hpp"

using namespace modlab;

namespace {

TinyCase loadCase(const std::string& name) {
  return loadTinyCase(std::string(MODLAB_DATA_DIR) + "/tiny/" + name + ".json");
}

}  // namespace

TEST_CASE("tiny corpus loads and dense solve hits the frozen values") {
  struct Entry {
    const char* name;
    size_t pathCount;
  };
  const Entry entries[] = {
      {"path4", 1},     {"parallel2x2", 2},   {"parallel3x2", 3}, {"triangle_p3", 2},
      {"lopsided", 1},  {"twobridge_p32", 1}, {"grid3x3", 9},
  };
  for (const auto& entry : entries) {
    CAPTURE(entry.name);
    TinyCase tc = loadCase(entry.name);
    REQUIRE(tc.hasExpected);
    auto paths = enumerateConnectingPaths(tc.g, tc.sources, tc.targets);
    CHECK(paths.size() == entry.pathCount);
    for (const auto& path : paths) {
      REQUIRE(path.size() >= 2);
      CHECK(std::find(tc.sources.begin(), tc.sources.end(), path.front()) != tc.sources.end());
      CHECK(std::find(tc.targets.begin(), tc.targets.end(), path.back()) != tc.targets.end());
      for (size_t i = 1; i + 1 < path.size(); ++i)
        CHECK(std::find(tc.targets.begin(), tc.targets.end(), path[i]) == tc.targets.end());
    }
    double v = densePathModulus(tc.g, paths, tc.p);
    CHECK(std::abs(v - tc.expected) <= tc.expectedTol);
  }
}

TEST_CASE("dense solve matches the closed forms of the calibration builders") {
  // 1-D chain: modulus is length^(1-p) when the control volumes are the
  // one-dimensional dual cells.
  for (int n : {1, 3, 5}) {
    CAPTURE(n);
    EndpointFamily f = chainGraph(n);
    auto paths = enumerateConnectingPaths(f.g, f.sources, f.targets);
    REQUIRE(paths.size() == 1);
    CHECK(std::abs(densePathModulus(f.g, paths, 2.0) - 1.0 / n) < 1e-10);
    CHECK(std::abs(densePathModulus(f.g, paths, 3.0) - 1.0 / (double(n) * n)) < 1e-10);
  }
  // Small square: product structure gives exactly 1 for left-right at p = 2.
  EndpointFamily sq = squareGrid(2);
  auto paths = enumerateConnectingPaths(sq.g, sq.sources, sq.targets);
  CHECK(paths.size() == 9);
  CHECK(std::abs(densePathModulus(sq.g, paths, 2.0) - 1.0) < 1e-9);
}

TEST_CASE("path enumeration rejects bad input") {
  EndpointFamily f = chainGraph(2);
  std::vector<int> overlap{0};
  CHECK_THROWS_AS(enumerateConnectingPaths(f.g, overlap, overlap), std::invalid_argument);
  CHECK(densePathModulus(f.g, {}, 2.0) == 0.0);
}
