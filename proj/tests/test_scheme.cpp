#include <doctest.h>

#include "spcover/scheme.hpp"
#include "spcover/voronoi.hpp"

#include <cmath>
#include <map>
#include <random>

using namespace spcover;

namespace {

std::map<std::string, std::vector<double>> sample_params() {
  return {
      {"tri9", {0.6961773622954127}},
      {"dipole11",
       {0.634095032729788663, 0.770868938310986401, 0.336628849216948194, 0.149012786774920663,
        0.121449107941445315, 0.796209636433271903, 0.389150175516029348, 0.768129234171283756,
        0.842629988260650600, 0.159651353051667299}},
      {"mirror13",
       {0.866334167832381956, 0.845832418056934350, 0.524669634639377289, 0.0158150817488019292,
        0.691828524265173209, 0.852938822579064226}},
      {"hex14", {2 * std::sqrt(3.0) - 3}},
      {"mirror15",
       {0.7981658270508071459, 0.4608212551057437875, 0.4847751269560606253, 0.2798850500445166073,
        0.9216425102114875750, 0.5597701000890332145}},
      {"mirror17",
       {0.866081227467719654, 0.839492695431074414, 0.225436996700011597, 0.499142550440532090,
        0.453462840795163529, 0.570638847472921471, 0.716685383316618479, 0.0723921505601956716}},
      {"tri18",
       {0.88869607772838093532, 0.40536689571338645897, 0.85189876064686144991, 0.30143558361484884261,
        0.77266162426483545158, 0.59487942737591607436, 0.90957338356990010077, 0.23290530593982136675}},
      {"mirror20",
       {0.984669201215740467, 0.713862052440409940, 0.661241128715695374, 0.621807744273859138,
        0.427536691316927765}},
      {"pent22",
       {0.6919090810112949212, 0.2231055241263849123, 0.5840978452407353910, 0.1677844402621232172,
        0.3046362789712863538, 0.7975481325531225265}},
      {"tri38", {0.7996599850609895832, 0.4056080372332561015, 0.2282433142753381738}},
      {"tri42",
       {0.95, 0.8, 0.62, 0.45, 0.3, 0.18, 0.05, 0.4, 1.0, 1.7, 2.3, 2.9, -1.2, 0.3, 0.9, 1.5, 2.1, 2.7, -1.0,
        -0.5}},
  };
}

Eigen::VectorXd vec(const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }

}  // namespace

TEST_CASE("scheme: named schemes build unit codes and round-trip") {
  for (const auto& [id, raw] : sample_params()) {
    CAPTURE(id);
    const SchemePtr s = named_scheme(id);
    const Eigen::VectorXd q = vec(raw);
    REQUIRE(static_cast<std::size_t>(q.size()) == s->free_parameters());
    const auto pts = s->points(q);
    REQUIRE(pts.size() == s->num_caps());
    for (const Vec3& p : pts) CHECK(std::abs(p.norm() - 1) < 1e-14);
    const SphericalCode code = params_to_code(*s, q);
    const Eigen::VectorXd back = code_to_params(*s, code);
    CHECK((back - q).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("scheme: jacobian matches central differences") {
  for (const auto& [id, raw] : sample_params()) {
    CAPTURE(id);
    const SchemePtr s = named_scheme(id);
    const Eigen::VectorXd q = vec(raw);
    const Eigen::MatrixXd J = s->jacobian(q);
    const double h = 1e-6;
    for (Eigen::Index k = 0; k < q.size(); ++k) {
      Eigen::VectorXd qp = q, qm = q;
      qp[k] += h;
      qm[k] -= h;
      const auto pp = s->points(qp), pm = s->points(qm);
      for (std::size_t i = 0; i < pp.size(); ++i)
        for (int c = 0; c < 3; ++c)
          CHECK(std::abs((pp[i][c] - pm[i][c]) / (2 * h) - J(3 * i + c, k)) < 1e-6 * (1 + std::abs(J(3 * i + c, k))));
    }
  }
}

TEST_CASE("scheme: projection averages a slightly asymmetric code") {
  const SchemePtr s = named_scheme("tri9");
  auto pts = s->points(Eigen::VectorXd::Constant(1, 0.6960));
  const auto low = s->points(Eigen::VectorXd::Constant(1, 0.6964));
  for (int i = 6; i < 9; ++i) pts[i] = low[i];
  const Eigen::VectorXd a = code_to_params(*s, SphericalCode::from_vectors(pts));
  CHECK(a[0] == doctest::Approx(0.6962).epsilon(1e-6));
}

TEST_CASE("scheme: mismatch is rejected") {
  const SchemePtr s = named_scheme("tri9");
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<Vec3> pts;
  for (int i = 0; i < 9; ++i) pts.push_back(Vec3(g(rng), g(rng), g(rng)).normalized());
  CHECK_THROWS_AS(code_to_params(*s, SphericalCode::from_vectors(pts)), SchemeMismatch);
  CHECK_THROWS_AS(make_scheme("tri9", 10), SchemeMismatch);
  CHECK_THROWS_AS(named_scheme("nonesuch"), DomainError);
}

TEST_CASE("scheme: generic gauge and round trip") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int n : {3, 4, 7, 20}) {
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) pts.push_back(Vec3(g(rng), g(rng), g(rng)).normalized());
    const SphericalCode code = SphericalCode::from_vectors(pts);
    const SchemePtr s = generic_scheme(n);
    CHECK(s->free_parameters() == static_cast<std::size_t>(2 * n - 3));
    const Eigen::VectorXd q = code_to_params(*s, code);
    const SphericalCode back = params_to_code(*s, q).rotated(s->gauge(code).inverse());
    CHECK(back.max_displacement(code) < 1e-12);
    CHECK(std::abs(covering_radius(back).cap.angular_radius - covering_radius(code).cap.angular_radius) <
          1e-12);
  }
}

TEST_CASE("scheme: every id is constructible") {
  for (const std::string& id : scheme_ids()) {
    if (id == "generic") continue;
    const SchemePtr s = named_scheme(id);
    CHECK(make_scheme(id, s->num_caps()) == s);
    CHECK_FALSE(s->structure().empty());
  }
}
