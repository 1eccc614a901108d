#include "spcover/voronoi.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spcover {

namespace {

constexpr double kGreatCircleTol = 1e-10;

// Unit normal of the best-fit plane through the origin, and its worst
// residual over the caps.
std::pair<Vec3, double> central_plane(std::span<const Vec3> pts) {
  Mat3 s = Mat3::Zero();
  for (const Vec3& p : pts) s += p * p.transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> es(s);
  Vec3 e = es.eigenvectors().col(0).normalized();
  // Deterministic orientation: first clearly nonzero component positive.
  for (int i = 0; i < 3; ++i) {
    if (std::abs(e[i]) > 1e-12) {
      if (e[i] < 0) e = -e;
      break;
    }
  }
  double worst = 0.0;
  for (const Vec3& p : pts) worst = std::max(worst, std::abs(p.dot(e)));
  return {e, worst};
}

CoveringResult great_circle_radius(std::span<const Vec3> pts, const Vec3& pole) {
  const auto [e1, e2] = tangent_basis(pole);
  const std::size_t n = pts.size();
  std::vector<std::pair<double, int>> ang(n);
  for (std::size_t i = 0; i < n; ++i)
    ang[i] = {std::atan2(pts[i].dot(e2), pts[i].dot(e1)), static_cast<int>(i)};
  std::sort(ang.begin(), ang.end());
  double gap = -1.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = ang[i].first;
    const double b = i + 1 < n ? ang[i + 1].first : ang[0].first + 2.0 * kPi;
    if (b - a > gap) {
      gap = b - a;
      at = i;
    }
  }
  if (gap <= kPi) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return {cap_from_angular(kPi / 2), UnitVector3::normalized(pole), all};
  }
  const double mid = ang[at].first + gap / 2;
  const Vec3 m = std::cos(mid) * e1 + std::sin(mid) * e2;
  std::vector<int> caps{ang[at].second, ang[(at + 1) % n].second};
  std::sort(caps.begin(), caps.end());
  return {cap_from_angular(gap / 2), UnitVector3::normalized(m), caps};
}

// Sort `ids` counterclockwise about `axis`, seen from outside.
template <class Pos>
void sort_ccw(std::vector<int>& ids, const Vec3& axis, Pos pos) {
  const auto [e1, e2] = tangent_basis(axis);
  std::vector<std::pair<double, int>> key;
  key.reserve(ids.size());
  for (int id : ids) {
    const Vec3 v = pos(id);
    key.emplace_back(std::atan2(v.dot(e2), v.dot(e1)), id);
  }
  std::sort(key.begin(), key.end());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = key[i].second;
}

}  // namespace

std::vector<Vec3> VoronoiMesh::cell_points(std::size_t cap) const {
  std::vector<Vec3> out;
  for (int v : cells.at(cap)) out.push_back(vertices[v].position.vec());
  return out;
}

bool is_rank_deficient(const SphericalCode& code) {
  const auto pts = code.vectors();
  return central_plane(pts).second < kGreatCircleTol;
}

std::vector<CircumTriple> circum_triples(std::span<const Vec3> pts, double max_slack) {
  const int n = static_cast<int>(pts.size());
  std::vector<CircumTriple> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec3 dj = pts[j] - pts[i];
      for (int k = j + 1; k < n; ++k) {
        const Vec3 nrm = dj.cross(pts[k] - pts[i]);
        const double len = nrm.norm();
        if (len < 1e-14) continue;
        for (double sign : {1.0, -1.0}) {
          const Vec3 c = sign * nrm / len;
          const double h = (c.dot(pts[i]) + c.dot(pts[j]) + c.dot(pts[k])) / 3.0;
          double top = h;
          for (int l = 0; l < n; ++l) {
            if (l == i || l == j || l == k) continue;
            top = std::max(top, c.dot(pts[l]));
            if (top - h > max_slack) break;
          }
          if (top - h <= max_slack) out.push_back({{i, j, k}, sign, c, h, top - h});
        }
      }
    }
  }
  return out;
}

VoronoiMesh mesh(const SphericalCode& code) {
  if (is_rank_deficient(code))
    throw DegenerateCode("all caps lie on one great circle; no spherical Voronoi diagram");
  const auto pts = code.vectors();
  const std::size_t n = pts.size();
  VoronoiMesh m;
  for (const CircumTriple& t : circum_triples(pts, kVertexSlack)) {
    bool merged = false;
    for (auto& v : m.vertices) {
      if ((v.position.vec() - t.center).norm() < kMergeTolerance) {
        merged = true;
        break;
      }
    }
    if (!merged) m.vertices.push_back({UnitVector3::normalized(t.center), {}, 0.0});
  }
  // Incidence: every cap at the minimum distance, within the merge tolerance.
  for (auto& v : m.vertices) {
    std::vector<double> d(n);
    for (std::size_t l = 0; l < n; ++l) d[l] = angular_distance(v.position, pts[l]);
    const double dmin = *std::min_element(d.begin(), d.end());
    for (std::size_t l = 0; l < n; ++l)
      if (d[l] - dmin <= kMergeTolerance) v.caps.push_back(static_cast<int>(l));
    v.distance = dmin;
  }
  m.cells.assign(n, {});
  for (std::size_t vi = 0; vi < m.vertices.size(); ++vi)
    for (int c : m.vertices[vi].caps) m.cells[c].push_back(static_cast<int>(vi));
  for (std::size_t c = 0; c < n; ++c)
    sort_ccw(m.cells[c], pts[c], [&](int v) { return m.vertices[v].position.vec(); });
  return m;
}

std::vector<Triangle> delaunay(const SphericalCode& code) {
  const VoronoiMesh m = mesh(code);
  const auto pts = code.vectors();
  std::vector<Triangle> tris;
  for (const auto& v : m.vertices) {
    std::vector<int> ring = v.caps;
    sort_ccw(ring, v.position.vec(), [&](int c) { return pts[c]; });
    std::rotate(ring.begin(), std::min_element(ring.begin(), ring.end()), ring.end());
    for (std::size_t k = 1; k + 1 < ring.size(); ++k) tris.push_back({ring[0], ring[k], ring[k + 1]});
  }
  std::sort(tris.begin(), tris.end());
  if (tris.size() != 2 * pts.size() - 4)
    throw DegenerateCode("hull fails the Euler check (V - E + F != 2)");
  return tris;
}

CoveringResult covering_radius(const SphericalCode& code) {
  const auto pts = code.vectors();
  const auto [pole, resid] = central_plane(pts);
  if (resid < kGreatCircleTol) return great_circle_radius(pts, pole);
  const VoronoiMesh m = mesh(code);
  std::size_t best = 0;
  for (std::size_t i = 1; i < m.vertices.size(); ++i)
    if (m.vertices[i].distance > m.vertices[best].distance) best = i;
  const auto& v = m.vertices[best];
  CoveringResult out{cap_from_angular(v.distance), v.position, v.caps};
  if (v.distance < kPi / 2) return out;

  // Beyond a hemisphere the farthest point may lie inside an edge (the far
  // point of a bisector) or be a cap's own antipode.
  const std::size_t n = pts.size();
  auto consider = [&](const Vec3& q) {
    std::vector<double> d(n);
    for (std::size_t l = 0; l < n; ++l) d[l] = angular_distance(q, pts[l]);
    const double dmin = *std::min_element(d.begin(), d.end());
    if (dmin <= out.cap.angular_radius + kMergeTolerance) return;
    std::vector<int> caps;
    for (std::size_t l = 0; l < n; ++l)
      if (d[l] - dmin <= kMergeTolerance) caps.push_back(static_cast<int>(l));
    out = {cap_from_angular(dmin), UnitVector3::normalized(q), caps};
  };
  for (std::size_t i = 0; i < n; ++i) {
    consider(-pts[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 s = pts[i] + pts[j];
      if (s.norm() > 1e-12) consider(-s.normalized());
    }
  }
  return out;
}

Vec3 cell_centroid(std::span<const Vec3> cell) {
  if (cell.empty()) throw DomainError("empty Voronoi cell");
  Vec3 s = Vec3::Zero();
  for (const Vec3& p : cell) s += p;
  return s / static_cast<double>(cell.size());
}

}  // namespace spcover
