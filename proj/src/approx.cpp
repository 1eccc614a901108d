#include "spcover/approx.hpp"

#include "spcover/geom.hpp"

#include <cmath>
#include <string>

namespace spcover {

double approx_height_fn(int n) {
  if (n < ApproxCoefficients::kMinN || n > ApproxCoefficients::kMaxN)
    throw DomainError("approximation valid for 3 <= n <= 150, got " + std::to_string(n));
  // Horner in 1/n: exact division keeps r(19) on the printed rational.
  const double x = static_cast<double>(n);
  double num = 0.0;
  for (double c : ApproxCoefficients::kNumerator) num = num * x + c;
  return num / (x * x * x * x * x);
}

double approx_radius(int n) { return std::acos(approx_height_fn(n)); }

double suggested_height(int n) { return approx_height_fn(n); }

}  // namespace spcover
