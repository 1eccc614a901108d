#include "spcover/lp.hpp"

#include "spcover/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace spcover {

LpResult solve_lp(const LpProblem& lp) {
  const int m = static_cast<int>(lp.A.rows());
  const int n = static_cast<int>(lp.A.cols());
  if (lp.b.size() != m || lp.c.size() != n || lp.upper.size() != n)
    throw DomainError("LP dimensions disagree");
  for (int i = 0; i < m; ++i)
    if (!(lp.b[i] >= 0.0)) throw DomainError("LP right-hand side must be nonnegative");

  const int cols = n + m;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kPivotTol = 1e-11;
  constexpr double kCostTol = 1e-13;

  // Tableau columns: structural variables, then slacks.
  Eigen::MatrixXd T(m, cols);
  T.leftCols(n) = lp.A;
  T.rightCols(m).setIdentity();
  Eigen::VectorXd d = Eigen::VectorXd::Zero(cols);  // reduced costs
  d.head(n) = lp.c;
  Eigen::VectorXd ub(cols);
  ub.head(n) = lp.upper;
  ub.tail(m).setConstant(kInf);
  std::vector<int> basis(m);
  std::vector<int> row_of(cols, -1);
  for (int i = 0; i < m; ++i) {
    basis[i] = n + i;
    row_of[n + i] = i;
  }
  std::vector<char> at_upper(cols, 0);
  Eigen::VectorXd beta = lp.b;

  LpResult res;
  int degenerate = 0;
  const int max_iters = 50 * (cols + 10);
  for (res.iterations = 0; res.iterations < max_iters; ++res.iterations) {
    const bool bland = degenerate > 30;
    int enter = -1;
    double best = 0.0;
    for (int j = 0; j < cols; ++j) {
      if (row_of[j] >= 0) continue;
      const double gain = at_upper[j] ? -d[j] : d[j];
      if (gain <= kCostTol) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (gain > best) {
        best = gain;
        enter = j;
      }
    }
    if (enter < 0) {
      res.optimal = true;
      break;
    }
    const double dir = at_upper[enter] ? -1.0 : 1.0;

    double theta = ub[enter];
    int leave = -1;
    bool leave_to_upper = false;
    for (int i = 0; i < m; ++i) {
      const double rate = T(i, enter) * dir;
      if (std::abs(T(i, enter)) <= kPivotTol) continue;
      double lim;
      bool to_upper = false;
      if (rate > 0) {
        lim = std::max(beta[i], 0.0) / rate;
      } else {
        const double u = ub[basis[i]];
        if (!std::isfinite(u)) continue;
        lim = std::max(u - beta[i], 0.0) / -rate;
        to_upper = true;
      }
      if (lim < theta || (lim == theta && leave >= 0 && bland && basis[i] < basis[leave])) {
        theta = lim;
        leave = i;
        leave_to_upper = to_upper;
      }
    }
    if (!std::isfinite(theta)) break;  // unbounded
    degenerate = theta == 0.0 ? degenerate + 1 : 0;

    beta -= (dir * theta) * T.col(enter);
    if (leave < 0) {
      at_upper[enter] = !at_upper[enter];
      continue;
    }
    const int out = basis[leave];
    const double entering_value = (at_upper[enter] ? ub[enter] : 0.0) + dir * theta;
    at_upper[out] = leave_to_upper;
    row_of[out] = -1;
    at_upper[enter] = 0;
    basis[leave] = enter;
    row_of[enter] = leave;

    const double piv = T(leave, enter);
    T.row(leave) /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = T(i, enter);
      if (f != 0.0) T.row(i) -= f * T.row(leave);
    }
    const double fd = d[enter];
    d -= fd * T.row(leave).transpose();
    beta[leave] = entering_value;
  }

  res.x = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    if (row_of[j] >= 0) res.x[j] = std::clamp(beta[row_of[j]], 0.0, ub[j]);
    else if (at_upper[j]) res.x[j] = ub[j];
  }
  res.objective = lp.c.dot(res.x);
  return res;
}

}  // namespace spcover
