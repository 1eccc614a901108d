#include "spcover/spherical_code.hpp"

#include <algorithm>
#include <sstream>

namespace spcover {

SphericalCode::SphericalCode(std::vector<UnitVector3> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw DomainError("a spherical code needs at least 2 caps");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (angular_distance(points_[i], points_[j]) < kMinSeparation) {
        std::ostringstream os;
        os << "caps " << i + 1 << " and " << j + 1 << " coincide";
        throw DomainError(os.str());
      }
    }
  }
}

SphericalCode SphericalCode::from_vectors(std::span<const Vec3> points) {
  std::vector<UnitVector3> pts;
  pts.reserve(points.size());
  for (const Vec3& p : points) pts.emplace_back(p);
  return SphericalCode(std::move(pts));
}

std::vector<Vec3> SphericalCode::vectors() const {
  std::vector<Vec3> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.vec());
  return out;
}

SphericalCode SphericalCode::rotated(const Rotation& r) const {
  std::vector<UnitVector3> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) pts.push_back(r.apply(p));
  return SphericalCode(std::move(pts));
}

double SphericalCode::max_displacement(const SphericalCode& other) const {
  if (other.size() != size()) throw DomainError("codes differ in size");
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    d = std::max(d, (points_[i].vec() - other.points_[i].vec()).norm());
  return d;
}

}  // namespace spcover
