#include <doctest.h>

#include "spcover/catalog.hpp"
#include "spcover/scheme.hpp"
#include "spcover/voronoi.hpp"

#include <algorithm>
#include <cmath>

using namespace spcover;

namespace {

// Set distance between two codes: the worst nearest-neighbour chord.
double set_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double worst = 0.0;
  for (const Vec3& p : a) {
    double best = 1e9;
    for (const Vec3& q : b) best = std::min(best, (p - q).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

// z -> -z followed by some rotation about z (or a rotation after a vertical
// reflection) maps the code onto itself.
bool mirror_symmetric(const SphericalCode& code, double tol) {
  const auto pts = code.vectors();
  std::vector<Vec3> flipped;
  for (const Vec3& p : pts) flipped.emplace_back(p.x(), p.y(), -p.z());
  const double a0 = std::atan2(pts[0].y(), pts[0].x());
  for (int refl = 0; refl < 2; ++refl) {
    for (const Vec3& f0 : flipped) {
      const double ay = refl ? -f0.y() : f0.y();
      const double alpha = a0 - std::atan2(ay, f0.x());
      const Rotation r = Rotation::about_axis(Vec3::UnitZ(), alpha);
      std::vector<Vec3> img;
      for (const Vec3& f : flipped) img.push_back(r.apply(Vec3(f.x(), refl ? -f.y() : f.y(), f.z())));
      if (set_distance(img, pts) < tol) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("catalog sizes and lookups") {
  const auto& sizes = catalog_sizes();
  CHECK(sizes.size() == 23);
  CHECK(std::is_sorted(sizes.begin(), sizes.end()));
  CHECK_THROWS_AS(catalog_entry(21), NotInCatalog);
  CHECK_THROWS_AS(catalog_entry(1), NotInCatalog);

  const CatalogEntry& e16 = catalog_entry(16);
  CHECK(e16.construction == Construction::Radicals);
  REQUIRE(e16.stated_height);
  CHECK(e16.stated_height->value ==
        doctest::Approx(std::sqrt((30 + 3 * std::sqrt(33.0)) / 67)).epsilon(1e-15));

  const CatalogEntry& e19 = catalog_entry(19);
  CHECK(e19.status == Status::NewLowerValue);
  CHECK(e19.table_radius_deg == doctest::Approx(30.374909).epsilon(1e-7));
  CHECK(e19.construction == Construction::Coordinates);
}

TEST_CASE("build_code matches printed rows") {
  const SphericalCode c10 = build_code(catalog_entry(10));
  const Vec3 cap2(std::sqrt(std::sqrt(8.0) - 2), 0, std::sqrt(2.0) - 1);
  CHECK((c10[1].vec() - cap2).norm() < 1e-15);

  const SphericalCode c32 = build_code(catalog_entry(32));
  const double t = std::sqrt(1.0 / 3);
  CHECK((c32[4].vec() - Vec3(t, t, t)).norm() < 1e-15);

  const SphericalCode c7 = build_code(catalog_entry(7));
  std::vector<double> az;
  for (std::size_t i = 2; i < 7; ++i) {
    CHECK(std::abs(c7[i].z()) < 1e-15);
    az.push_back(std::atan2(c7[i].y(), c7[i].x()));
  }
  std::sort(az.begin(), az.end());
  for (std::size_t i = 0; i < az.size(); ++i) {
    const double next = i + 1 < az.size() ? az[i + 1] : az[0] + 2 * kPi;
    CHECK(std::abs(rad_to_deg(next - az[i]) - 72.0) < 1e-10);
  }
}

TEST_CASE("every code is unit norm and reproduces its table radius") {
  for (std::size_t n : catalog_sizes()) {
    CAPTURE(n);
    const CatalogEntry& e = catalog_entry(n);
    const SphericalCode c = build_code(e);
    CHECK(c.size() == n);
    for (const auto& p : c.points()) CHECK(std::abs(p.vec().norm() - 1) < 1e-12);
    if (n == 42) continue;  // frozen local search result, see the entry notes
    const double got = rad_to_deg(covering_radius(c).cap.angular_radius);
    CHECK(std::abs(got - e.table_radius_deg) < radius_tolerance_deg(e));
  }
}

TEST_CASE("verify_entry") {
  for (std::size_t n : {12, 38}) {
    const VerificationReport r = verify_entry(catalog_entry(n));
    CAPTURE(n);
    CHECK(r.passed());
    CHECK(r.checks.size() >= 6);
  }
  const auto r38 = verify_entry(catalog_entry(38));
  CHECK(std::any_of(r38.checks.begin(), r38.checks.end(),
                    [](const Check& c) { return c.name.find("polynomial") != std::string::npos && c.passed; }));

  const CatalogEntry& e42 = catalog_entry(42);
  CHECK(e42.status == Status::LocalMinimum);
  CHECK(e42.construction == Construction::Numeric);
  const auto r42 = verify_entry(e42);
  CHECK(std::any_of(r42.checks.begin(), r42.checks.end(),
                    [](const Check& c) { return c.name.find("covering radius") != std::string::npos; }));
}

TEST_CASE("verify_entry passes for every full entry but 42") {
  for (std::size_t n : catalog_sizes()) {
    if (n == 42) continue;
    CAPTURE(n);
    const auto r = verify_entry(catalog_entry(n));
    for (const Check& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("cross-check rows") {
  const auto rows = cross_check_table();
  CHECK(rows.size() == catalog_sizes().size());
  auto row = [&](std::size_t n) {
    return *std::find_if(rows.begin(), rows.end(), [n](const CrossCheckRow& r) { return r.n == n; });
  };
  const auto r8 = row(8);
  REQUIRE(r8.reference_deg);
  CHECK(*r8.reference_deg == 48.138529);
  CHECK(std::abs(r8.computed_deg - 48.1395290861) < 5e-9);
  CHECK(r8.status == Status::PutativeGlobal);

  const auto r17 = row(17);
  CHECK(std::abs(r17.computed_deg - 32.0929327861) < 1e-8);
  CHECK(r17.status == Status::LocalMinimum);

  const auto r2 = row(2);
  CHECK_FALSE(r2.reference_deg);
  CHECK(r2.computed_deg == doctest::Approx(90.0).epsilon(1e-15));

  CHECK(row(18).status == Status::NeedsInvestigation);
}

TEST_CASE("mirror symmetry of the symmetric entries") {
  for (std::size_t n : {9, 13, 15, 17, 18, 20, 22, 38}) {
    CAPTURE(n);
    CHECK(mirror_symmetric(build_code(catalog_entry(n)), 1e-10));
  }
}

TEST_CASE("named entries lie on their schemes") {
  for (std::size_t n : catalog_sizes()) {
    const CatalogEntry& e = catalog_entry(n);
    if (e.scheme_id == "generic") continue;
    CAPTURE(n);
    const auto s = make_scheme(e.scheme_id, n);
    const SphericalCode c = build_code(e);
    CHECK(params_to_code(*s, code_to_params(*s, c)).max_displacement(c) < 1e-12);
  }
}

TEST_CASE("Voronoi incidence on catalog codes") {
  for (std::size_t n : catalog_sizes()) {
    const SphericalCode c = build_code(catalog_entry(n));
    if (is_rank_deficient(c)) continue;
    CAPTURE(n);
    for (const auto& v : mesh(c).vertices) CHECK(v.caps.size() >= 3);
  }
}
