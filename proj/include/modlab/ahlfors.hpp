#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modlab/surface.hpp"

namespace modlab {

// One measured ball.  inner/mid/outer are the cell-counting brackets from
// ballMeasureY; ratio uses the mid estimate against r^2.
struct BallSample {
  int center = -1;
  std::string stratum;
  double r = 0;
  double inner = 0, mid = 0, outer = 0;

  double ratio() const { return mid / (r * r); }
  double innerRatio() const { return inner / (r * r); }
  double outerRatio() const { return outer / (r * r); }
};

struct AhlforsScan {
  std::vector<BallSample> samples;
  long rejectedDraws = 0;  // center/radius pairs discarded for reaching the rim
  double minInnerRatio = 0, maxOuterRatio = 0;
};

// Regularity scan over the surface.  Centers are drawn round-robin from five
// strata (cusp, base chart, pillowcase sheets cycled by level, slit seams,
// anything), radii log-uniform in [rMin, rMax].  Draws whose ball would reach
// the outer boundary are rejected and redrawn so truncation never distorts the
// extremes; the rejection count is reported.  Deterministic in `seed`.
AhlforsScan ahlforsScanY(const SurfaceMesh& mesh, int count, std::uint64_t seed,
                         double rMin = 1.0 / 16, double rMax = 1.0);

}  // namespace modlab
