// Small dense linear programs: maximize c·x subject to A·x <= b,
// 0 <= x <= upper, with b >= 0 so the origin is feasible.
#pragma once

#include <Eigen/Dense>

namespace spcover {

struct LpProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::VectorXd upper;  // +inf allowed
};

struct LpResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  bool optimal = false;  // false on iteration limit or unboundedness
  int iterations = 0;
};

/// Bounded-variable primal simplex on a dense tableau. Dantzig pricing,
/// falling back to Bland's rule after a run of degenerate pivots.
LpResult solve_lp(const LpProblem& lp);

}  // namespace spcover
