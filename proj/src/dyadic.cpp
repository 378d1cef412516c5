#include "modlab/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace modlab {

double CuspProfile::eval(double t) {
  if (!(t >= 0.0) || !(t < 1.0)) throw std::domain_error("CuspProfile: t outside [0,1)");
  return evalUnchecked(t);
}

double DyadicSlit::abscissa() const { return std::ldexp(static_cast<double>(numer), -level); }

bool DyadicSlit::lengthIsProfile() const {
  // f(t) < 2^-m  <=>  i^3/(3*8^m) < 2^-m  <=>  i^3 < 3*4^m, all in int64 for m <= 20.
  const std::int64_t i3 = numer * numer * numer;
  const std::int64_t rhs = std::int64_t{3} << (2 * level);
  return i3 < rhs;
}

double DyadicSlit::length() const {
  if (lengthIsProfile()) {
    const double t = abscissa();
    return CuspProfile::evalUnchecked(t);
  }
  return std::ldexp(1.0, -level);
}

double DyadicSlit::side() const { return std::ldexp(1.0, -level); }

std::vector<DyadicSlit> enumerateSlits(int depthM) {
  if (depthM < 0 || depthM > 20) throw std::invalid_argument("enumerateSlits: depth must be in [0,20]");
  std::vector<DyadicSlit> out;
  for (int m = 1; m <= depthM; ++m) {
    const std::int64_t top = std::int64_t{1} << m;
    for (std::int64_t i = 1; i < top; i += 2) out.push_back(DyadicSlit{m, i});
  }
  return out;
}

double pillowLevelArea(int level) { return std::ldexp(1.0, -level); }

double pillowTailArea(int depthM) {
  if (depthM < 0) throw std::invalid_argument("pillowTailArea: negative depth");
  return std::ldexp(1.0, -depthM);
}

}  // namespace modlab
