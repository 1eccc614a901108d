// Spherical Delaunay/Voronoi construction and exact covering-radius
// evaluation.
//
// Points on S² are in convex position, so the Delaunay triangulation is the
// convex hull and each hull facet's outward circumcenter is a Voronoi vertex.
// Vertices are found by enumerating the circumcenters of all cap triples and
// keeping those with an empty circumcircle; circumcenters that coincide
// within kMergeTolerance are merged into one vertex whose incidence set holds
// every equidistant cap. The symmetric catalog codes are co-circular almost
// everywhere, so this merge is the normal case, not an exception.
#pragma once

#include "spcover/geom.hpp"
#include "spcover/spherical_code.hpp"

#include <array>
#include <span>
#include <vector>

namespace spcover {

class DegenerateCode : public Error {
 public:
  using Error::Error;
};

using Triangle = std::array<int, 3>;

struct VoronoiVertex {
  UnitVector3 position;
  std::vector<int> caps;  // equidistant caps, ascending
  double distance = 0.0;  // angular distance to the incident caps
};

struct VoronoiMesh {
  std::vector<VoronoiVertex> vertices;
  /// Per cap: vertex indices, counterclockwise seen from outside the sphere.
  std::vector<std::vector<int>> cells;

  std::vector<Vec3> cell_points(std::size_t cap) const;
};

struct CoveringResult {
  CapGeometry cap;
  UnitVector3 witness_vertex;
  std::vector<int> witness_caps;
};

/// A triple whose circumcircle (on the side `center` points to) contains no
/// cap closer than `slack` in cosine terms.
struct CircumTriple {
  Triangle caps;
  double sign = 1.0;  // center = sign * normalize((p_j - p_i) x (p_k - p_i))
  Vec3 center;
  double height = 0.0;  // center · p_i
  double slack = 0.0;   // max_l center · p_l - height, >= 0 up to rounding
};

inline constexpr double kVertexSlack = 1e-12;
inline constexpr double kMergeTolerance = 1e-9;

/// True when every cap lies on one great circle.
bool is_rank_deficient(const SphericalCode& code);

/// All oriented triples with slack <= max_slack, ordered by (i, j, k, sign).
std::vector<CircumTriple> circum_triples(std::span<const Vec3> points, double max_slack);

/// Convex-hull facets, each counterclockwise seen from outside.
std::vector<Triangle> delaunay(const SphericalCode& code);

VoronoiMesh mesh(const SphericalCode& code);

CoveringResult covering_radius(const SphericalCode& code);

/// Arithmetic mean of the cell vertices, not renormalized.
Vec3 cell_centroid(std::span<const Vec3> cell);

}  // namespace spcover
