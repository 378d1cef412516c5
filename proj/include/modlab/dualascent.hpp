#pragma once

#include <vector>

namespace modlab {

// Inner engine shared by the working-set modulus programs.  Maximizes the
// Lagrangian dual of
//
//   minimize  sum_i w_i x_i^p   subject to   R x >= 1,  x >= 0,
//
// over multipliers lambda >= 0 by cyclic coordinate ascent; every row update
// solves its one-dimensional optimality condition exactly (closed form at
// p = 2, safeguarded Newton otherwise).  The induced primal point
// x_i = (s_i / (p w_i))^(1/(p-1)) with s = R^T lambda is kept incrementally.
class DualAscent {
 public:
  DualAscent(std::vector<double> weights, double p);

  // Rows may only touch items of positive weight.
  void addRow(std::vector<int> items, std::vector<double> coef);
  int rowCount() const { return static_cast<int>(rows_.size()); }

  // One cyclic pass over all multipliers; returns the worst violation
  // 1 - <row, x> remaining afterwards.
  double sweep();

  // Recomputes s and x from the multipliers to shed incremental drift.
  void refresh();

  double energy() const;         // sum w x^p
  double dualObjective() const;  // sum lambda - (p-1) * energy
  const std::vector<double>& x() const { return x_; }

 private:
  struct Row {
    std::vector<int> items;
    std::vector<double> coef;
    double lambda = 0;
  };

  double primal(double s, double w) const;
  double rowValue(const Row& r) const;
  double phiAt(const Row& r, double t) const;
  double phiDeriv(const Row& r, double t) const;
  void updateRow(Row& r);
  double solveRoot(const Row& r);

  std::vector<double> w_;
  double p_, q_;
  std::vector<Row> rows_;
  std::vector<double> s_, x_, scratch_;
};

}  // namespace modlab
