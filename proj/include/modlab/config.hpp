#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace modlab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Experiment parameters.  Defaults reproduce the standard runs: fine surface
// scans at (M=6, h=1/128) and product solves at the clamped (M=4, h=1/32,
// hz=1/16) scale derived by productScale below.
struct Config {
  int depthM = 6;
  double meshH = 1.0 / 128;
  double verticalHz = 1.0 / 16;
  std::uint64_t seed = 1;
  std::vector<double> deltaList{0.2, 0.1, 0.05, 0.025};
  double epsilon = 0.5;
  double p = 3;
  double tol = 1e-4;
  std::string outputDir = "out";
};

// Accepts the flat key = value subset of TOML: integers, floats, quoted
// strings, one-line float arrays, and # comments.  Unknown keys are errors so
// typos never silently fall back to defaults.
Config parseConfig(std::istream& in);
Config loadConfig(const std::string& path);

void validateConfig(const Config& cfg);

// Product (3-d) runs clamp the horizontal step at 1/32 to keep solver sizes
// tractable, and cap the pillowcase depth at what the grid can resolve.
struct ProductScale {
  int depthM = 0;
  double h = 0, hz = 0;

  std::string label() const;
};

ProductScale productScale(const Config& cfg);

// Coarse-to-fine ladder ending at productScale(cfg): each coarser rung doubles
// both steps.  Rungs the surface cannot support are dropped; fewer than two
// usable rungs is a configuration error.
std::vector<ProductScale> refinementLadder(const Config& cfg);

}  // namespace modlab
