#include <doctest.h>

#include "spcover/lp.hpp"

#include <limits>
#include <random>

using namespace spcover;

TEST_CASE("lp: textbook problem") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
  LpProblem lp;
  lp.A.resize(3, 2);
  lp.A << 1, 0, 0, 2, 3, 2;
  lp.b = Eigen::Vector3d(4, 12, 18);
  lp.c = Eigen::Vector2d(3, 5);
  lp.upper = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
  const LpResult r = solve_lp(lp);
  REQUIRE(r.optimal);
  CHECK(r.objective == doctest::Approx(36));
  CHECK(r.x[0] == doctest::Approx(2));
  CHECK(r.x[1] == doctest::Approx(6));
}

TEST_CASE("lp: upper bounds bind") {
  LpProblem lp;
  lp.A.resize(1, 2);
  lp.A << 1, 1;
  lp.b = Eigen::VectorXd::Constant(1, 10);
  lp.c = Eigen::Vector2d(1, 2);
  lp.upper = Eigen::Vector2d(3, 4);
  const LpResult r = solve_lp(lp);
  REQUIRE(r.optimal);
  CHECK(r.objective == doctest::Approx(11));
}

TEST_CASE("lp: unbounded is reported") {
  LpProblem lp;
  lp.A.resize(1, 2);
  lp.A << 1, -1;
  lp.b = Eigen::VectorXd::Constant(1, 1);
  lp.c = Eigen::Vector2d(1, 0);
  lp.upper = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
  CHECK_FALSE(solve_lp(lp).optimal);
}

TEST_CASE("lp: random boxes against vertex enumeration bound") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 12, k = 4;
    LpProblem lp;
    lp.A.resize(m, k);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < k; ++j) lp.A(i, j) = u(rng);
    lp.b = Eigen::VectorXd::NullaryExpr(m, [&] { return 0.5 * (u(rng) + 1); });
    lp.c = Eigen::VectorXd::NullaryExpr(k, [&] { return u(rng); });
    lp.upper = Eigen::VectorXd::Constant(k, 1.0);
    const LpResult r = solve_lp(lp);
    REQUIRE(r.optimal);
    CHECK((lp.A * r.x - lp.b).maxCoeff() <= 1e-9);
    CHECK(r.x.minCoeff() >= -1e-12);
    CHECK(r.x.maxCoeff() <= 1 + 1e-12);
    // No feasible sample beats the optimum.
    for (int s = 0; s < 200; ++s) {
      Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(k, [&] { return 0.5 * (u(rng) + 1); });
      if ((lp.A * x - lp.b).maxCoeff() <= 0) CHECK(lp.c.dot(x) <= r.objective + 1e-9);
    }
  }
}
