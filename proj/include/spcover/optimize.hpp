// Local covering optimization: the mesh -> average height -> per-cap update
// -> reparameterize loop, plus perturbation restarts.
#pragma once

#include "spcover/scheme.hpp"
#include "spcover/spherical_code.hpp"
#include "spcover/voronoi.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace spcover {

/// A step failed; cap() is the offending cap, or -1 when no single cap is
/// to blame (degenerate mesh, scheme mismatch).
class StepError : public Error {
 public:
  StepError(const std::string& what, int cap) : Error(what), cap_(cap) {}
  int cap() const { return cap_; }

 private:
  int cap_;
};

struct PlaneFit {
  UnitVector3 normal;
  double offset = 0.0;         // normal · centroid, >= 0
  double residual = 0.0;       // RMS distance of the points to the plane
  double max_deviation = 0.0;  // largest distance of a point to the plane
};

/// Least-squares plane through `centroid`: the scatter-matrix eigenvector
/// with the smallest eigenvalue.
PlaneFit fit_plane(std::span<const Vec3> points, const Vec3& centroid);

/// RMS distance of `points` to the plane with unit normal `normal` through
/// `centroid`.
double plane_residual(std::span<const Vec3> points, const Vec3& centroid, const Vec3& normal);

/// Mean over caps of the mean height of the cell vertices above the cap's
/// tangent-parallel plane through the origin.
double average_height(const SphericalCode& code, const VoronoiMesh& mesh);

/// Smallest circumcenter height over the Delaunay facets: cos of the
/// covering radius while that radius is below π/2.
double min_vertex_height(std::span<const Vec3> points);

enum class StepRule {
  /// Each cap moves to the normal of the plane fitted to its cell vertices.
  PlaneFit,
  /// Trust-region sequential LP raising the smallest Voronoi-vertex height.
  Minimax,
};

/// Trust radius carried between Minimax steps (parameter units, or radians
/// per tangent coordinate for the generic scheme).
struct TrustRegion {
  double radius = 1e-2;
  static constexpr double kMax = 0.1;
  static constexpr double kMin = 1e-15;
};

struct StepResult {
  SphericalCode code;
  double height = 0.0;  // average height of the input code
};

StepResult converge_step(const SphericalCode& code, const SymmetryScheme& scheme,
                         StepRule rule = StepRule::Minimax);
StepResult converge_step(const SphericalCode& code, const SymmetryScheme& scheme, StepRule rule,
                         TrustRegion& trust);

struct ConvergeOptions {
  std::size_t max_iters = 500;
  double tol = 1e-12;  // on the covering radius, radians
  StepRule rule = StepRule::Minimax;
  double initial_trust = 1e-2;
  /// How far the seed may sit from the scheme before it is snapped onto it.
  double snap_residual = 0.1;
};

struct ConvergeResult {
  SphericalCode code;
  CoveringResult covering;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> history;  // covering radius after each iteration, radians
};

/// Iterates converge_step; returns the best code seen, not the last.
ConvergeResult run_converge(const SphericalCode& code, const SymmetryScheme& scheme,
                            const ConvergeOptions& options = {});

/// Moves every cap by `magnitude` radians along a random tangent direction.
SphericalCode perturb(const SphericalCode& code, double magnitude, std::uint64_t seed);

struct StartResult {
  std::uint64_t seed = 0;
  ConvergeResult result;
};

/// run_converge from perturb(code, magnitude, seed) for each seed, on up to
/// `threads` threads. Sorted by (covering radius, seed).
std::vector<StartResult> multi_start(const SphericalCode& code, const SymmetryScheme& scheme,
                                     double magnitude, std::span<const std::uint64_t> seeds,
                                     const ConvergeOptions& options = {}, unsigned threads = 0);

}  // namespace spcover
