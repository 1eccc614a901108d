// Symmetry schemes: parameterizations of codes by a few scalars.
#pragma once

#include "spcover/geom.hpp"
#include "spcover/spherical_code.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace spcover {

class SchemeMismatch : public Error {
 public:
  using Error::Error;
};

class SymmetryScheme {
 public:
  virtual ~SymmetryScheme() = default;

  virtual std::string id() const = 0;
  virtual std::size_t num_caps() const = 0;
  virtual std::size_t free_parameters() const = 0;
  virtual std::string structure() const = 0;

  /// Raw cap centers for a parameter vector, not validated.
  virtual std::vector<Vec3> points(const Eigen::VectorXd& params) const = 0;
  /// d(points)/d(params) as a 3n x k matrix, rows (x, y, z) per cap.
  virtual Eigen::MatrixXd jacobian(const Eigen::VectorXd& params) const = 0;
  /// Rough parameters read off a code near the scheme; refined by projection.
  virtual Eigen::VectorXd initial_guess(const SphericalCode& code) const = 0;

  /// Rotation taking a code into the scheme's frame. Identity unless the
  /// scheme pins a rotational gauge (generic, tri42).
  virtual Rotation gauge(const SphericalCode&) const { return Rotation(); }
  /// Caps may move independently, so optimizers can work in tangent planes.
  virtual bool free_motion() const { return false; }
};

using SchemePtr = std::shared_ptr<const SymmetryScheme>;

/// Gauge-fixed spherical coordinates: cap 1 at +z, cap 2 in the x-z
/// half-plane with x >= 0; parameters θ2, then (θi, φi) for i >= 3.
SchemePtr generic_scheme(std::size_t n);

/// Named structures; ids "tri9", "dipole11", "mirror13", "hex14",
/// "mirror15", "mirror17", "tri18", "mirror20", "pent22", "tri38", "tri42".
SchemePtr named_scheme(std::string_view id);

/// Named scheme for n, or "generic" for any n >= 2.
SchemePtr make_scheme(std::string_view id, std::size_t n);

std::vector<std::string> scheme_ids();

inline constexpr double kSchemeResidualLimit = 1e-3;

SphericalCode params_to_code(const SymmetryScheme& scheme, const Eigen::VectorXd& params);

/// Least-squares projection onto the scheme (Gauss-Newton from the scheme's
/// guess). Throws SchemeMismatch if the fitted points miss the code by more
/// than max_residual (chord length).
Eigen::VectorXd code_to_params(const SymmetryScheme& scheme, const SphericalCode& code,
                               double max_residual = kSchemeResidualLimit);

}  // namespace spcover
