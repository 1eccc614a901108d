#pragma once

#include "spcover/geom.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace spcover {

/// Ordered list of n >= 2 distinct cap centers on S².
class SphericalCode {
 public:
  static constexpr double kMinSeparation = 1e-9;  // radians

  SphericalCode() = default;
  explicit SphericalCode(std::vector<UnitVector3> points);
  /// Accepts raw vectors under the UnitVector3 normalization rule.
  static SphericalCode from_vectors(std::span<const Vec3> points);

  std::size_t size() const { return points_.size(); }
  const UnitVector3& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<UnitVector3>& points() const { return points_; }
  std::vector<Vec3> vectors() const;

  SphericalCode rotated(const Rotation& r) const;

  /// Largest displacement (chord length) between corresponding caps.
  double max_displacement(const SphericalCode& other) const;

 private:
  std::vector<UnitVector3> points_;
};

}  // namespace spcover
