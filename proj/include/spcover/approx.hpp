// Rational-polynomial estimate of the optimal covering for n caps.
#pragma once

#include <array>

namespace spcover {

struct ApproxCoefficients {
  // Numerator of r(n) = (c5 n^5 + c4 n^4 + c3 n^3 + c2 n^2 + c1 n + c0) / n^5.
  static constexpr std::array<double, 6> kNumerator{1.00185292,  -2.67624769, 2.965272834,
                                                    -43.610276, 217.5695441, -366.876452};
  static constexpr int kMinN = 3;
  static constexpr int kMaxN = 150;
};

/// The printed rational function. Its value is a cap height (cosine).
double approx_height_fn(int n);

/// Angular radius in radians, arccos of the rational function.
double approx_radius(int n);

/// cos(approx_radius(n)).
double suggested_height(int n);

}  // namespace spcover
