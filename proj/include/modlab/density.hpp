// The explicit near-zero-energy density for curves leaving the singular
// segment, its p-energy, and the closed-form energy bound it must satisfy.
//
// The density lives on the product mesh and is built from the metric ball of
// radius delta around the cusp in the base surface: base-chart vertices of the
// ball get 1/delta, pillowcase vertices of the ball get 1/epsilon, both
// restricted to layers |z| <= 1 + epsilon; everything else gets 0.  Any path
// escaping the segment must either cross the ball sideways (collecting
// delta * 1/delta) or climb past |z| = 1 + epsilon (collecting
// epsilon * 1/epsilon), so the density is admissible up to O(h) mesh defect
// while its energy shrinks linearly with delta.
#pragma once

#include <span>
#include <vector>

#include "modlab/product.hpp"

namespace modlab {

// Distance from the cusp to every base-surface vertex (single shortest-path
// sweep; inputs for the region tests below).
std::vector<double> cuspDistances(const SurfaceMesh& mesh);

// Per product-vertex density; requires 0 < delta < epsilon.
std::vector<double> analyticDensity(const ProductMesh& pm, const std::vector<double>& cuspDist,
                                    double delta, double epsilon);

// 4(1+eps)delta + cReg delta^2 (1+eps) / eps^3; requires 0 < delta < epsilon.
double energyBound(double delta, double epsilon, double cReg);

// The regularity constant used for the bound column.
inline constexpr double kRegularityConstant = 35.0;

// Sum over vertices of mu * rho^p.
double densityEnergy(const WeightedGraph& g, std::span<const double> rho, double p);

// Outer condenser plate: vertices at cusp distance >= delta or |z| >= 1+epsilon
// (the closed complement of the region the density lives on).
std::vector<int> outerPlate(const ProductMesh& pm, const std::vector<double>& cuspDist,
                            double delta, double epsilon);

// Length of a vertex path under the density metric: per step, the mean of the
// endpoint values times the (shortest parallel) edge length.
double rhoPathLength(const WeightedGraph& g, std::span<const double> rho,
                     const std::vector<int>& path);

// Smallest rho-length over all source-to-target paths (admissibility check,
// independent of the modulus solver's internal search).
double minRhoLength(const WeightedGraph& g, std::span<const double> rho,
                    std::span<const int> sources, std::span<const int> targets);

}  // namespace modlab
