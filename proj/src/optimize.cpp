#include "spcover/optimize.hpp"

#include "spcover/lp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <thread>

namespace spcover {

namespace {

constexpr double kAcceptGain = 1e-15;
// Facets further than this from being Delaunay stay out of the LP.
constexpr double kMaxWindow = 0.02;

// Gradient of the oriented circumcenter height s·det(pi,pj,pk)/|N| with
// N = (pj - pi) × (pk - pi), with respect to each of the three points.
std::array<Vec3, 3> height_gradient(const Vec3& pi, const Vec3& pj, const Vec3& pk, double s) {
  const Vec3 N = pi.cross(pj) + pj.cross(pk) + pk.cross(pi);
  const double L = N.norm();
  const double D = pi.dot(pj.cross(pk));
  const std::array<Vec3, 3> dD{pj.cross(pk), pk.cross(pi), pi.cross(pj)};
  const std::array<Vec3, 3> dL{(pj - pk).cross(N) / L, (pk - pi).cross(N) / L, (pi - pj).cross(N) / L};
  std::array<Vec3, 3> g;
  for (int c = 0; c < 3; ++c) g[c] = s * (dD[c] * L - D * dL[c]) / (L * L);
  return g;
}

// Variables of one Minimax step: either scheme parameters or two tangent
// coordinates per cap.
struct Chart {
  std::vector<Vec3> base;
  Eigen::MatrixXd J;  // 3n x k
  Eigen::VectorXd q;  // scheme parameters; empty for tangent charts
};

Chart tangent_chart(const SphericalCode& code) {
  Chart c;
  c.base = code.vectors();
  const std::size_t n = c.base.size();
  c.J = Eigen::MatrixXd::Zero(3 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [e1, e2] = tangent_basis(c.base[i]);
    c.J.block<3, 1>(3 * i, 2 * i) = e1;
    c.J.block<3, 1>(3 * i, 2 * i + 1) = e2;
  }
  return c;
}

// Points after moving by delta, or empty if the move leaves the domain.
std::vector<Vec3> moved(const Chart& c, const SymmetryScheme& scheme, const Eigen::VectorXd& delta) {
  std::vector<Vec3> out;
  if (c.q.size() == 0) {
    out.reserve(c.base.size());
    for (std::size_t i = 0; i < c.base.size(); ++i)
      out.push_back((c.base[i] + c.J.block<3, 2>(3 * i, 2 * i) * delta.segment<2>(2 * i)).normalized());
  } else {
    out = scheme.points(c.q + delta);
  }
  for (const Vec3& p : out)
    if (!p.allFinite()) return {};
  return out;
}

SphericalCode to_code(const std::vector<Vec3>& pts, int cap_hint = -1) {
  try {
    return SphericalCode::from_vectors(pts);
  } catch (const Error& e) {
    throw StepError(e.what(), cap_hint);
  }
}

bool valid_code(const std::vector<Vec3>& pts) {
  if (pts.empty()) return false;
  try {
    SphericalCode::from_vectors(pts);
    return true;
  } catch (const Error&) {
    return false;
  }
}

StepResult minimax_step(const SphericalCode& code, const SymmetryScheme& scheme, double height,
                        TrustRegion& trust) {
  Chart chart;
  Rotation back;  // scheme frame -> input frame
  if (scheme.free_motion()) {
    chart = tangent_chart(code);
  } else {
    try {
      chart.q = code_to_params(scheme, code);
    } catch (const SchemeMismatch& e) {
      throw StepError(e.what(), -1);
    }
    back = scheme.gauge(code).inverse();
    chart.base = scheme.points(chart.q);
    chart.J = scheme.jacobian(chart.q);
  }
  const Eigen::Index k = chart.J.cols();
  const double h0 = min_vertex_height(chart.base);
  const double row_l1 = chart.J.cwiseAbs().rowwise().sum().maxCoeff();

  while (trust.radius >= TrustRegion::kMin) {
    const double delta_max = trust.radius;
    const double eps = std::clamp(4.0 * delta_max * row_l1, 1e-11, kMaxWindow);
    const std::vector<CircumTriple> tris = circum_triples(chart.base, eps);
    if (tris.empty()) throw StepError("no Voronoi vertices", -1);

    // Variables: tau = t - h0 >= 0, delta+ and delta- in [0, Delta].
    const Eigen::Index m = static_cast<Eigen::Index>(tris.size());
    Eigen::MatrixXd G(m, k);
    Eigen::VectorXd g(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const CircumTriple& t = tris[r];
      const auto [a, b, c] = t.caps;
      const auto grad = height_gradient(chart.base[a], chart.base[b], chart.base[c], t.sign);
      G.row(r) = grad[0].transpose() * chart.J.middleRows<3>(3 * a) +
                 grad[1].transpose() * chart.J.middleRows<3>(3 * b) +
                 grad[2].transpose() * chart.J.middleRows<3>(3 * c);
      g[r] = t.height;
    }
    const double t0 = g.minCoeff();
    LpProblem lp;
    lp.A.resize(m, 1 + 2 * k);
    lp.A.col(0).setOnes();
    lp.A.middleCols(1, k) = -G;
    lp.A.rightCols(k) = G;
    lp.b = (g.array() - t0).max(0.0).matrix();
    lp.c = Eigen::VectorXd::Zero(1 + 2 * k);
    lp.c[0] = 1.0;
    lp.upper.resize(1 + 2 * k);
    lp.upper[0] = std::numeric_limits<double>::infinity();
    lp.upper.tail(2 * k).setConstant(delta_max);
    const LpResult sol = solve_lp(lp);
    if (!sol.optimal) {
      trust.radius /= 4;
      continue;
    }
    const Eigen::VectorXd delta = sol.x.segment(1, k) - sol.x.tail(k);
    const double predicted = (g + G * delta).minCoeff() - h0;
    const std::vector<Vec3> next = moved(chart, scheme, delta);
    if (predicted <= 0.0 || !valid_code(next)) {
      trust.radius /= 4;
      continue;
    }
    const double actual = min_vertex_height(next) - h0;
    if (actual <= kAcceptGain) {
      trust.radius /= 4;
      continue;
    }
    if (actual > 0.75 * predicted)
      trust.radius = std::min(2 * delta_max, TrustRegion::kMax);
    else if (actual < 0.25 * predicted)
      trust.radius = delta_max / 4;
    return {to_code(next).rotated(back), height};
  }
  // No improving step: the (projected) input is a local optimum.
  return {chart.q.size() == 0 ? code : to_code(chart.base).rotated(back), height};
}

StepResult plane_fit_step(const SphericalCode& code, const SymmetryScheme& scheme, const VoronoiMesh& m,
                          double height) {
  std::vector<Vec3> next(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto cell = m.cell_points(i);
    PlaneFit fit;
    try {
      fit = fit_plane(cell, cell_centroid(cell));
    } catch (const Error& e) {
      throw StepError(std::string("cap ") + std::to_string(i + 1) + ": " + e.what(), static_cast<int>(i));
    }
    const Vec3 u = fit.normal.vec();
    next[i] = u.dot(code[i].vec()) >= 0 ? u : Vec3(-u);
  }
  const SphericalCode w = to_code(next);
  try {
    const Eigen::VectorXd q = code_to_params(scheme, w);
    return {params_to_code(scheme, q).rotated(scheme.gauge(w).inverse()), height};
  } catch (const SchemeMismatch& e) {
    throw StepError(e.what(), -1);
  }
}

}  // namespace

double plane_residual(std::span<const Vec3> points, const Vec3& centroid, const Vec3& normal) {
  double s = 0.0;
  for (const Vec3& p : points) {
    const double d = (p - centroid).dot(normal);
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(points.size()));
}

PlaneFit fit_plane(std::span<const Vec3> points, const Vec3& centroid) {
  if (points.size() < 3) throw DomainError("plane fit needs at least 3 points");
  Mat3 s = Mat3::Zero();
  for (const Vec3& p : points) s += (p - centroid) * (p - centroid).transpose();
  const Eigen::SelfAdjointEigenSolver<Mat3> es(s);
  // Scale-relative so that rounding on exactly collinear input still trips.
  if (es.eigenvalues()[1] < std::max(1e-18, 1e-14 * es.eigenvalues()[2]))
    throw DomainError("plane fit on collinear points");
  Vec3 n = es.eigenvectors().col(0).normalized();
  double offset = n.dot(centroid);
  if (offset < 0) {
    n = -n;
    offset = -offset;
  }
  PlaneFit out{UnitVector3::normalized(n), offset, plane_residual(points, centroid, n), 0.0};
  for (const Vec3& p : points) out.max_deviation = std::max(out.max_deviation, std::abs((p - centroid).dot(n)));
  return out;
}

double average_height(const SphericalCode& code, const VoronoiMesh& m) {
  double total = 0.0;
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto& cell = m.cells.at(i);
    if (cell.empty()) throw DomainError("empty Voronoi cell for cap " + std::to_string(i + 1));
    double s = 0.0;
    for (int v : cell) s += code[i].vec().dot(m.vertices[v].position.vec());
    total += s / static_cast<double>(cell.size());
  }
  return total / static_cast<double>(code.size());
}

double min_vertex_height(std::span<const Vec3> points) {
  double h = std::numeric_limits<double>::infinity();
  for (const CircumTriple& t : circum_triples(points, kVertexSlack)) h = std::min(h, t.height);
  return h;
}

StepResult converge_step(const SphericalCode& code, const SymmetryScheme& scheme, StepRule rule) {
  TrustRegion trust;
  return converge_step(code, scheme, rule, trust);
}

StepResult converge_step(const SphericalCode& code, const SymmetryScheme& scheme, StepRule rule,
                         TrustRegion& trust) {
  if (code.size() != scheme.num_caps())
    throw StepError("code has " + std::to_string(code.size()) + " caps, scheme " + scheme.id() + " has " +
                        std::to_string(scheme.num_caps()),
                    -1);
  VoronoiMesh m;
  double height = 0.0;
  try {
    m = mesh(code);
    height = average_height(code, m);
  } catch (const DegenerateCode& e) {
    throw StepError(e.what(), -1);
  }
  if (rule == StepRule::PlaneFit) return plane_fit_step(code, scheme, m, height);
  return minimax_step(code, scheme, height, trust);
}

constexpr double kStallTrust = 1e-9;

ConvergeResult run_converge(const SphericalCode& code, const SymmetryScheme& scheme,
                            const ConvergeOptions& options) {
  const Eigen::VectorXd q = code_to_params(scheme, code, options.snap_residual);
  SphericalCode w = scheme.free_motion() ? code : params_to_code(scheme, q).rotated(scheme.gauge(code).inverse());

  ConvergeResult out;
  out.code = w;
  out.covering = covering_radius(w);
  out.history.push_back(out.covering.cap.angular_radius);
  double prev = out.covering.cap.angular_radius;
  TrustRegion trust{options.initial_trust};
  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    w = converge_step(w, scheme, options.rule, trust).code;
    const CoveringResult cov = covering_radius(w);
    const double r = cov.cap.angular_radius;
    out.history.push_back(r);
    out.iterations = it;
    if (r < out.covering.cap.angular_radius) {
      out.code = w;
      out.covering = cov;
    }
    // A tiny gain from a step that still had room to move is slow progress,
    // not convergence.
    const bool stalled = options.rule == StepRule::PlaneFit || trust.radius < kStallTrust;
    if (std::abs(r - prev) < options.tol && stalled) {
      out.converged = true;
      break;
    }
    prev = r;
  }
  return out;
}

SphericalCode perturb(const SphericalCode& code, double magnitude, std::uint64_t seed) {
  if (!(magnitude >= 0.0)) throw DomainError("perturbation magnitude must be >= 0");
  if (magnitude == 0.0) return code;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<Vec3> out;
  out.reserve(code.size());
  for (const UnitVector3& u : code.points()) {
    const Vec3 p = u.vec();
    const auto [e1, e2] = tangent_basis(p);
    const double phi = angle(rng);
    const Vec3 t = std::cos(phi) * e1 + std::sin(phi) * e2;
    out.push_back(std::cos(magnitude) * p + std::sin(magnitude) * t);
  }
  return SphericalCode::from_vectors(out);
}

std::vector<StartResult> multi_start(const SphericalCode& code, const SymmetryScheme& scheme,
                                     double magnitude, std::span<const std::uint64_t> seeds,
                                     const ConvergeOptions& options, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(seeds.size(), 1)));
  std::vector<StartResult> out(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      out[i].seed = seeds[i];
      out[i].result = run_converge(perturb(code, magnitude, seeds[i]), scheme, options);
    }
  };
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t) jobs.push_back(std::async(std::launch::async, worker));
  for (auto& j : jobs) j.get();
  std::sort(out.begin(), out.end(), [](const StartResult& a, const StartResult& b) {
    const double ra = a.result.covering.cap.angular_radius, rb = b.result.covering.cap.angular_radius;
    return ra != rb ? ra < rb : a.seed < b.seed;
  });
  return out;
}

}  // namespace spcover
