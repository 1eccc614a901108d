#include <doctest.h>

#include "spcover/catalog.hpp"
#include "spcover/optimize.hpp"

#include <cmath>
#include <random>

using namespace spcover;

namespace {

SphericalCode octahedron() {
  const std::vector<Vec3> p{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  return SphericalCode::from_vectors(p);
}

double radius_deg(const SphericalCode& c) { return rad_to_deg(covering_radius(c).cap.angular_radius); }

Rotation random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Vec3 axis = Vec3(g(rng), g(rng), g(rng)).normalized();
  return Rotation::about_axis(axis, std::uniform_real_distribution<double>(0, 2 * kPi)(rng));
}

}  // namespace

TEST_CASE("fit_plane on exact planes") {
  const std::vector<Vec3> sq{{1, 1, 0.5}, {-1, 1, 0.5}, {-1, -1, 0.5}, {1, -1, 0.5}};
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : sq) c += p / 4;
  const PlaneFit f = fit_plane(sq, c);
  CHECK((f.normal.vec() - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK(f.offset == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f.residual < 1e-15);

  const std::vector<Vec3> tri{{0.3, -0.2, 0.9}, {-0.5, 0.7, 0.1}, {0.8, 0.4, -0.6}};
  const Vec3 tc = (tri[0] + tri[1] + tri[2]) / 3;
  CHECK(fit_plane(tri, tc).max_deviation < 1e-15);
}

TEST_CASE("fit_plane rejects degenerate input") {
  const std::vector<Vec3> two{{1, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(fit_plane(two, Vec3(0.5, 0.5, 0)), Error);
  const std::vector<Vec3> line{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}};
  CHECK_THROWS_AS(fit_plane(line, Vec3(1.5, 1.5, 1.5)), Error);
}

TEST_CASE("fit_plane on the 14-cap hexagon cell") {
  const SphericalCode c = build_code(catalog_entry(14));
  REQUIRE((c[0].vec() - Vec3(0, 0, 1)).norm() < 1e-15);
  const VoronoiMesh m = mesh(c);
  const auto cell = m.cell_points(0);
  CHECK(cell.size() == 6);
  const PlaneFit f = fit_plane(cell, cell_centroid(cell));
  CHECK((f.normal.vec() - Vec3(0, 0, 1)).norm() < 1e-12);
  CHECK(f.residual < 1e-12);
}

TEST_CASE("fit_plane beats random normals") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(Vec3(g(rng), g(rng), 0.2 * g(rng)));
    const Vec3 c = cell_centroid(pts);
    const PlaneFit f = fit_plane(pts, c);
    for (int k = 0; k < 100; ++k) {
      const Vec3 nrm = Vec3(g(rng), g(rng), g(rng)).normalized();
      CHECK(f.residual <= plane_residual(pts, c, nrm) + 1e-15);
    }
  }
}

TEST_CASE("average_height of symmetric codes") {
  const SphericalCode oct = octahedron();
  CHECK(average_height(oct, mesh(oct)) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
  const SphericalCode dod = build_code(catalog_entry(12));
  CHECK(average_height(dod, mesh(dod)) ==
        doctest::Approx(std::sqrt((5 + 2 * std::sqrt(5.0)) / 15)).epsilon(1e-14));
  const std::vector<Vec3> anti{{0, 0, 1}, {0, 0, -1}};
  CHECK_THROWS_AS(mesh(SphericalCode::from_vectors(anti)), DegenerateCode);
}

TEST_CASE("exact symmetric codes are fixed points") {
  const SphericalCode oct = octahedron();
  const auto gen6 = generic_scheme(6);
  for (StepRule rule : {StepRule::PlaneFit, StepRule::Minimax})
    CHECK(converge_step(oct, *gen6, rule).code.max_displacement(oct) < 1e-12);

  const SphericalCode dod = build_code(catalog_entry(12));
  CHECK(converge_step(dod, *generic_scheme(12)).code.max_displacement(dod) < 1e-12);
}

TEST_CASE("one step improves a perturbed octahedron") {
  std::vector<Vec3> p = octahedron().vectors();
  p[1] = Vec3(1, 1e-3, 0).normalized();
  const SphericalCode c = SphericalCode::from_vectors(p);
  const StepResult st = converge_step(c, *generic_scheme(6));
  CHECK(radius_deg(st.code) < radius_deg(c));
}

TEST_CASE("run_converge recovers the 10-cap covering") {
  const SphericalCode exact = build_code(catalog_entry(10));
  const auto r = run_converge(perturb(exact, 1e-2, 1), *generic_scheme(10));
  CHECK(std::abs(rad_to_deg(r.covering.cap.angular_radius) - 42.3078266301) < 1e-8);
  CHECK(r.history.size() == r.iterations + 1);
}

TEST_CASE("run_converge recovers the 9-cap height under tri9") {
  const SphericalCode exact = build_code(catalog_entry(9));
  const auto s = named_scheme("tri9");
  const auto r = run_converge(perturb(exact, 1e-2, 3), *s);
  CHECK(std::cos(r.covering.cap.angular_radius) == doctest::Approx(0.6961773623).epsilon(1e-8));
  CHECK(code_to_params(*s, r.code)[0] == doctest::Approx(0.6961773622954127).epsilon(1e-9));
}

TEST_CASE("run_converge on an exact code stops at once") {
  ConvergeOptions o;
  o.tol = 1e-12;
  const auto r = run_converge(build_code(catalog_entry(16)), *generic_scheme(16), o);
  CHECK(r.converged);
  CHECK(r.iterations <= 2);
}

TEST_CASE("run_converge never returns worse than the start") {
  for (std::size_t n : {6, 10, 12, 14}) {
    const CatalogEntry& e = catalog_entry(n);
    const SphericalCode exact = build_code(e);
    const auto s = make_scheme(e.scheme_id, n);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const double mag = 1e-2 * (seed + 1) / 25.0;
      const SphericalCode start = perturb(exact, mag, seed);
      const auto r = run_converge(start, *s);
      const double got = rad_to_deg(r.covering.cap.angular_radius);
      CHECK(got <= radius_deg(start) + 1e-12);
      CHECK(std::abs(got - e.table_radius_deg) < 1e-8);
    }
  }
}

TEST_CASE("run_converge is rotation invariant under the generic scheme") {
  std::mt19937_64 rng(11);
  const SphericalCode start = perturb(build_code(catalog_entry(10)), 5e-3, 4);
  const auto base = run_converge(start, *generic_scheme(10));
  for (int k = 0; k < 3; ++k) {
    const auto r = run_converge(start.rotated(random_rotation(rng)), *generic_scheme(10));
    CHECK(std::abs(r.covering.cap.angular_radius - base.covering.cap.angular_radius) < 1e-10);
  }
}

TEST_CASE("perturb") {
  const SphericalCode oct = octahedron();
  CHECK(perturb(oct, 0.0, 5).max_displacement(oct) == 0.0);
  CHECK(perturb(oct, 1e-2, 5).max_displacement(perturb(oct, 1e-2, 5)) == 0.0);
  CHECK(perturb(oct, 1e-2, 5).max_displacement(perturb(oct, 1e-2, 6)) > 0.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SphericalCode p = perturb(oct, 1e-2, seed);
    for (std::size_t i = 0; i < p.size(); ++i)
      CHECK(angular_distance(p[i], oct[i]) == doctest::Approx(1e-2).epsilon(1e-9));
    const double r = radius_deg(p);
    CHECK(r >= 54.73);
    CHECK(r <= 55.5);
  }
}

TEST_CASE("multi_start orders by radius") {
  const SphericalCode exact = build_code(catalog_entry(10));
  const std::vector<std::uint64_t> seeds{3, 1, 2};
  const auto runs = multi_start(exact, *generic_scheme(10), 2e-2, seeds, {}, 2);
  REQUIRE(runs.size() == 3);
  for (std::size_t i = 1; i < runs.size(); ++i)
    CHECK(runs[i - 1].result.covering.cap.angular_radius <= runs[i].result.covering.cap.angular_radius);
}
