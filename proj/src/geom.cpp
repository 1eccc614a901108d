#include "spcover/geom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spcover {

UnitVector3::UnitVector3(const Vec3& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormalizeSlack) {
    std::ostringstream os;
    os.precision(17);
    os << "not a unit vector (norm " << n << ")";
    throw DomainError(os.str());
  }
  v_ = v / n;
}

UnitVector3 UnitVector3::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero vector");
  return from_unit(v / n);
}

double CapGeometry::angular_radius_deg() const { return rad_to_deg(angular_radius); }

Rotation::Rotation(const Mat3& m) : m_(m) {
  const double orth = (m * m.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (orth > 1e-12 || std::abs(m.determinant() - 1.0) > 1e-12)
    throw DomainError("matrix is not a proper rotation");
}

Rotation Rotation::about_axis(const Vec3& axis, double angle) {
  const Vec3 k = axis.normalized();
  Mat3 kx;
  kx << 0, -k.z(), k.y(), k.z(), 0, -k.x(), -k.y(), k.x(), 0;
  const Mat3 m = Mat3::Identity() + std::sin(angle) * kx + (1.0 - std::cos(angle)) * kx * kx;
  return Rotation(m, 0);
}

UnitVector3 Rotation::apply(const UnitVector3& u) const {
  return UnitVector3::normalized(m_ * u.vec());
}

double angular_distance(const Vec3& u, const Vec3& v) {
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

CapGeometry cap_from_height(double height) {
  if (!(height >= -1.0 && height <= 1.0)) throw DomainError("cap height outside [-1, 1]");
  return {height, std::sqrt((1.0 - height) * (1.0 + height)), std::acos(height)};
}

CapGeometry cap_from_angular(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("angular radius outside [0, pi]");
  return {std::cos(theta), std::sin(theta), theta};
}

Rotation rot3(const UnitVector3& u, const UnitVector3& v) {
  const Vec3& a = u.vec();
  const Vec3& b = v.vec();
  const Vec3 axis = a.cross(b);
  const double s = axis.norm();
  const double c = a.dot(b);
  if (s < 1e-9) {
    if (c > 0.0) return Rotation();
    Vec3 w = Vec3::UnitX() - a.x() * a;
    if (w.norm() < 1e-6) w = Vec3::UnitY() - a.y() * a;
    const Rotation half = Rotation::about_axis(w.normalized(), kPi);
    // Residual tilt from -u to v is below 1e-9 rad.
    const Vec3 na = -a;
    const Vec3 tilt = na.cross(b);
    const double ts = tilt.norm();
    if (ts == 0.0) return half;
    return Rotation::about_axis(tilt / ts, std::atan2(ts, na.dot(b))) * half;
  }
  return Rotation::about_axis(axis / s, std::atan2(s, c));
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3& p) {
  const Vec3 ref = std::abs(p.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 e1 = (ref - ref.dot(p) * p).normalized();
  Vec3 e2 = p.cross(e1);
  return {e1, e2};
}

}  // namespace spcover
