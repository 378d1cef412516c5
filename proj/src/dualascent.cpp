#include "modlab/dualascent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modlab {

DualAscent::DualAscent(std::vector<double> weights, double p)
    : w_(std::move(weights)), p_(p), q_(1.0 / (p - 1.0)), s_(w_.size(), 0.0),
      x_(w_.size(), 0.0) {
  if (!(p > 1)) throw std::invalid_argument("DualAscent: requires p > 1");
}

void DualAscent::addRow(std::vector<int> items, std::vector<double> coef) {
  if (items.size() != coef.size() || items.empty())
    throw std::invalid_argument("DualAscent: malformed row");
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i] < 0 || items[i] >= static_cast<int>(w_.size()))
      throw std::invalid_argument("DualAscent: item out of range");
    if (!(w_[items[i]] > 0))
      throw std::invalid_argument("DualAscent: row touches an item of zero weight");
    if (!(coef[i] > 0)) throw std::invalid_argument("DualAscent: nonpositive coefficient");
  }
  Row r;
  r.items = std::move(items);
  r.coef = std::move(coef);
  rows_.push_back(std::move(r));
}

double DualAscent::primal(double s, double w) const {
  if (s <= 0) return 0;
  double y = s / (p_ * w);
  if (q_ == 0.5) return std::sqrt(y);  // p = 3, the everyday exponent here
  if (q_ == 1.0) return y;
  if (q_ == 2.0) return y * y;
  return std::pow(y, q_);
}

double DualAscent::rowValue(const Row& r) const {
  double t = 0;
  for (size_t i = 0; i < r.items.size(); ++i) t += r.coef[i] * x_[r.items[i]];
  return t;
}

double DualAscent::sweep() {
  for (auto& r : rows_) updateRow(r);
  double worst = 0;
  for (const auto& r : rows_) worst = std::max(worst, 1.0 - rowValue(r));
  return worst;
}

void DualAscent::refresh() {
  std::fill(s_.begin(), s_.end(), 0.0);
  for (const auto& r : rows_)
    for (size_t i = 0; i < r.items.size(); ++i) s_[r.items[i]] += r.lambda * r.coef[i];
  for (size_t i = 0; i < s_.size(); ++i) x_[i] = primal(s_[i], w_[i]);
}

double DualAscent::energy() const {
  double e = 0;
  if (p_ == 3.0) {
    for (size_t i = 0; i < x_.size(); ++i)
      if (x_[i] > 0) e += w_[i] * x_[i] * x_[i] * x_[i];
    return e;
  }
  for (size_t i = 0; i < x_.size(); ++i)
    if (x_[i] > 0) e += w_[i] * std::pow(x_[i], p_);
  return e;
}

double DualAscent::dualObjective() const {
  double sl = 0;
  for (const auto& r : rows_) sl += r.lambda;
  return sl - (p_ - 1.0) * energy();
}

// Row objective phi(t) = sum_i c_i x(s_i^base + c_i t) - 1 using the scratch
// baseline with the row's own contribution removed; increasing in t.
double DualAscent::phiAt(const Row& r, double t) const {
  double acc = 0;
  for (size_t i = 0; i < r.items.size(); ++i)
    acc += r.coef[i] * primal(scratch_[i] + r.coef[i] * t, w_[r.items[i]]);
  return acc - 1.0;
}

double DualAscent::phiDeriv(const Row& r, double t) const {
  double acc = 0;
  for (size_t i = 0; i < r.items.size(); ++i) {
    double s = scratch_[i] + r.coef[i] * t;
    double w = w_[r.items[i]];
    if (s <= 0) continue;
    double y = s / (p_ * w);
    double slope = (q_ == 0.5)   ? 1.0 / std::sqrt(y)
                   : (q_ == 1.0) ? 1.0
                   : (q_ == 2.0) ? y
                                 : std::pow(y, q_ - 1.0);
    acc += r.coef[i] * r.coef[i] * q_ / (p_ * w) * slope;
  }
  return acc;
}

void DualAscent::updateRow(Row& r) {
  const size_t k = r.items.size();
  scratch_.resize(k);
  for (size_t i = 0; i < k; ++i) scratch_[i] = s_[r.items[i]] - r.coef[i] * r.lambda;

  double next;
  if (phiAt(r, 0.0) >= 0) {
    next = 0;  // constraint already covered by the other multipliers
  } else if (p_ == 2.0) {
    double num = 1.0, den = 0;
    for (size_t i = 0; i < k; ++i) {
      num -= r.coef[i] * scratch_[i] / (2.0 * w_[r.items[i]]);
      den += r.coef[i] * r.coef[i] / (2.0 * w_[r.items[i]]);
    }
    next = num / den;
  } else {
    next = solveRoot(r);
  }
  double delta = next - r.lambda;
  if (delta != 0) {
    r.lambda = next;
    for (size_t i = 0; i < k; ++i) {
      int v = r.items[i];
      s_[v] += r.coef[i] * delta;
      x_[v] = primal(s_[v], w_[v]);
    }
  }
}

// Safeguarded Newton for phi(t) = 0, t >= 0, warm started at the current
// multiplier; phi is monotone so the bisection bracket always recovers.
double DualAscent::solveRoot(const Row& r) {
  double lo = 0, hi = std::max(r.lambda, 1.0);
  while (phiAt(r, hi) < 0) {
    lo = hi;
    hi *= 2;
    if (hi > 1e100) throw std::runtime_error("DualAscent: unbounded multiplier");
  }
  double t = std::clamp(r.lambda, lo, hi);
  for (int it = 0; it < 80; ++it) {
    double f = phiAt(r, t);
    if (std::abs(f) <= 1e-14) break;
    (f < 0 ? lo : hi) = t;
    double df = phiDeriv(r, t);
    double tn = (df > 0) ? t - f / df : t;
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) {
      t = 0.5 * (lo + hi);
      break;
    }
    t = tn;
  }
  return t;
}

}  // namespace modlab
