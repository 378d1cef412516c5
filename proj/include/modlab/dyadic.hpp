// Cusp profile and the dyadic slit family that drives the surface construction.
#pragma once

#include <cstdint>
#include <vector>

namespace modlab {

// Height profile of the cusp region: f(t) = t^3/3 on [0,1).
// f(0) = 0, f' <= 1 on the domain, so the region {0 <= y <= f(t)} is a
// 1-Lipschitz graph domain pinched at the origin.
struct CuspProfile {
  // Throws std::domain_error outside [0,1).
  static double eval(double t);
  static double evalUnchecked(double t) { return (t * t * t) / 3.0; }
};

// Slit at abscissa t = i/2^m (i odd), vertical segment {t} x [0, len] with
// len = min(2^-m, f(t)).  All arithmetic on (i, m) is exact.
struct DyadicSlit {
  int level = 0;        // m >= 1
  std::int64_t numer = 0;  // i, odd, 1 <= i < 2^m

  double abscissa() const;        // i / 2^m, exact in binary
  double length() const;          // min(2^-m, f(t)); within 1 ulp
  bool lengthIsProfile() const;   // true iff f(t) < 2^-m, i.e. i^3 < 3*4^m
  double side() const;            // pillowcase side length 2^-m
};

// All slits of level <= M, ordered by (level, numer).  M = 0 gives none.
// Throws std::invalid_argument for M < 0 or M > 20.
std::vector<DyadicSlit> enumerateSlits(int depthM);

// Total doubled-pillowcase area attached per level m: 2^{m-1} slits * 2*4^-m = 2^-m.
double pillowLevelArea(int level);

// Area of all pillowcases beyond depth M: sum_{m > M} 2^-m = 2^-M (exact).
double pillowTailArea(int depthM);

}  // namespace modlab
