// Integer polynomials, compensated evaluation and root refinement for the
// catalog's algebraic numbers.
#pragma once

#include "spcover/geom.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace spcover {

class NoRootNearby : public Error {
 public:
  using Error::Error;
};

/// Integer coefficients, highest degree first. Coefficients are limited to
/// |c| < 2^53 so they convert to double exactly; the catalog peaks at
/// 137851392.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<std::int64_t> coeffs);
  IntPolynomial(std::initializer_list<std::int64_t> coeffs)
      : IntPolynomial(std::vector<std::int64_t>(coeffs)) {}

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  bool empty() const { return c_.empty(); }

  IntPolynomial derivative() const;
  /// Σ|c_i|·|x|^i, the magnitude residuals are measured against.
  double scale(double x) const;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> c_;
};

struct RootApprox {
  IntPolynomial polynomial;
  double value = 0.0;
  double residual = 0.0;  // |p(value)|
  bool simple = false;    // |p'(value)| > 1e-6 * scale(p)
};

/// Compensated Horner evaluation, accurate to about one ulp of p(x) plus
/// u²·scale(x).
double poly_eval(const IntPolynomial& p, double x);

/// Plain Horner, kept for comparison.
double horner(const IntPolynomial& p, double x);

inline constexpr double kRootTol = 1e-12;

/// Root near x0 (|root - x0| <= 1e-3) with |p(root)| <= tol * scale(root).
RootApprox refine_root(const IntPolynomial& p, double x0, double tol = kRootTol);

enum class PairFailure { None, HeightNotRoot, RadiusNotRoot, NotUnitCircle };

struct PairVerdict {
  PairFailure reason = PairFailure::None;
  explicit operator bool() const { return reason == PairFailure::None; }
};

const char* to_string(PairFailure f);

/// h and r must refine to roots of their polynomials and satisfy h² + r² = 1
/// within 1e-10.
PairVerdict verify_pair(const IntPolynomial& height_poly, const IntPolynomial& radius_poly,
                        double h, double r);

}  // namespace spcover
