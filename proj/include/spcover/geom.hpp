// Elementary spherical geometry: unit vectors, angular metrics, cap
// height/radius/angle conversions and minimal rotations.
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace spcover {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A direction on S². Construction normalizes inputs whose norm is within
/// kNormalizeSlack of 1 and rejects anything further away.
class UnitVector3 {
 public:
  static constexpr double kNormalizeSlack = 1e-8;

  UnitVector3() : v_(0.0, 0.0, 1.0) {}
  UnitVector3(double x, double y, double z) : UnitVector3(Vec3(x, y, z)) {}
  explicit UnitVector3(const Vec3& v);

  /// Normalizes any nonzero vector, no slack check.
  static UnitVector3 normalized(const Vec3& v);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }

  UnitVector3 operator-() const { return UnitVector3::from_unit(-v_); }
  double dot(const UnitVector3& o) const { return v_.dot(o.v_); }

 private:
  struct Trusted {};
  UnitVector3(const Vec3& v, Trusted) : v_(v) {}
  static UnitVector3 from_unit(const Vec3& v) { return UnitVector3(v, Trusted{}); }
  Vec3 v_;
};

/// Height h, planar radius r and angular radius θ of a cap; r² + h² = 1.
struct CapGeometry {
  double height = 0.0;
  double planar_radius = 1.0;
  double angular_radius = 0.0;  // radians

  double angular_radius_deg() const;
};

/// Proper orthogonal 3x3 matrix.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}
  explicit Rotation(const Mat3& m);

  /// Rotation by `angle` radians about unit `axis` (right-hand rule).
  static Rotation about_axis(const Vec3& axis, double angle);

  const Mat3& matrix() const { return m_; }
  Vec3 apply(const Vec3& v) const { return m_ * v; }
  UnitVector3 apply(const UnitVector3& u) const;
  Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_, 0); }
  Rotation inverse() const { return Rotation(m_.transpose(), 0); }

 private:
  Rotation(const Mat3& m, int) : m_(m) {}
  Mat3 m_;
};

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Geodesic distance in [0, π], via atan2(|u×v|, u·v).
double angular_distance(const Vec3& u, const Vec3& v);

CapGeometry cap_from_height(double height);
CapGeometry cap_from_angular(double theta);

/// Minimal-angle rotation taking u to v. For u ≈ −v the half turn is about
/// the normalized projection of (1,0,0) onto u⊥, or of (0,1,0) if that
/// projection vanishes.
Rotation rot3(const UnitVector3& u, const UnitVector3& v);

/// Orthonormal tangent basis (e1, e2) at p with e1 × e2 = p.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& p);

}  // namespace spcover
