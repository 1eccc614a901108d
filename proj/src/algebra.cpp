#include "spcover/algebra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace spcover {

namespace {

constexpr std::int64_t kMaxExact = std::int64_t{1} << 53;

// Error-free transformations.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

struct Eval {
  double value;
  double slope;
};

Eval eval_with_slope(const IntPolynomial& p, const IntPolynomial& dp, double x) {
  return {poly_eval(p, x), dp.empty() ? 0.0 : poly_eval(dp, x)};
}

bool acceptable(const IntPolynomial& p, double x, double f, double tol) {
  return std::abs(f) <= tol * p.scale(x);
}

// Safeguarded Newton on a sign-changing bracket [a, b].
double solve_bracket(const IntPolynomial& p, const IntPolynomial& dp, double a, double b) {
  double fa = poly_eval(p, a);
  if (fa == 0.0) return a;
  double x = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    const Eval e = eval_with_slope(p, dp, x);
    if (e.value == 0.0) return x;
    if ((e.value < 0) == (fa < 0)) {
      a = x;
      fa = e.value;
    } else {
      b = x;
    }
    double next = x - e.value / e.slope;
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (next == x || b - a <= 2 * std::numeric_limits<double>::epsilon() * std::abs(x)) break;
    x = next;
  }
  // Pick the better endpoint-or-interior candidate.
  double best = x;
  double fbest = std::abs(poly_eval(p, x));
  for (double c : {a, b}) {
    const double fc = std::abs(poly_eval(p, c));
    if (fc < fbest) {
      best = c;
      fbest = fc;
    }
  }
  return best;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw DomainError("polynomial needs at least one coefficient");
  if (c_.front() == 0 && c_.size() > 1) throw DomainError("leading coefficient is zero");
  for (auto c : c_)
    if (c >= kMaxExact || c <= -kMaxExact) throw DomainError("coefficient exceeds 2^53");
}

IntPolynomial IntPolynomial::derivative() const {
  if (c_.size() <= 1) return IntPolynomial({0});
  std::vector<std::int64_t> d;
  const int n = degree();
  for (int i = 0; i < n; ++i) d.push_back(c_[i] * (n - i));
  return IntPolynomial(std::move(d));
}

double IntPolynomial::scale(double x) const {
  const double ax = std::abs(x);
  double s = 0.0;
  for (auto c : c_) s = s * ax + std::abs(static_cast<double>(c));
  return s;
}

std::string IntPolynomial::to_string() const {
  std::ostringstream os;
  const int n = degree();
  bool first = true;
  for (int i = 0; i <= n; ++i) {
    const std::int64_t c = c_[i];
    if (c == 0 && !(n == 0)) continue;
    const int e = n - i;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || e == 0) os << a;
    if (e >= 1) os << "x";
    if (e >= 2) os << "^" << e;
    first = false;
  }
  return os.str();
}

double horner(const IntPolynomial& p, double x) {
  double s = 0.0;
  for (auto c : p.coeffs()) s = s * x + static_cast<double>(c);
  return s;
}

double poly_eval(const IntPolynomial& p, double x) {
  const auto& c = p.coeffs();
  double s = static_cast<double>(c.front());
  double err = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    double prod, pe, se;
    two_prod(s, x, prod, pe);
    two_sum(prod, static_cast<double>(c[i]), s, se);
    err = err * x + (pe + se);
  }
  return s + err;
}

RootApprox refine_root(const IntPolynomial& p, double x0, double tol) {
  if (p.degree() < 1) throw NoRootNearby("constant polynomial has no root");
  const IntPolynomial dp = p.derivative();
  constexpr double kStep = 1e-5;
  constexpr double kReach = 1e-3;

  double root = std::numeric_limits<double>::quiet_NaN();
  const double f0 = poly_eval(p, x0);
  if (f0 == 0.0) root = x0;

  // Expanding bracket search, nearest sign change first.
  const int steps = static_cast<int>(std::lround(kReach / kStep));
  double lo_prev = x0, hi_prev = x0, flo = f0, fhi = f0;
  for (int k = 1; k <= steps && std::isnan(root); ++k) {
    const double hi = x0 + k * kStep;
    const double fh = poly_eval(p, hi);
    if ((fh < 0) != (fhi < 0) || fh == 0.0) {
      root = solve_bracket(p, dp, hi_prev, hi);
      break;
    }
    hi_prev = hi;
    fhi = fh;
    const double lo = x0 - k * kStep;
    const double fl = poly_eval(p, lo);
    if ((fl < 0) != (flo < 0) || fl == 0.0) {
      root = solve_bracket(p, dp, lo, lo_prev);
      break;
    }
    lo_prev = lo;
    flo = fl;
  }

  // No sign change nearby: a double root, or x0 sits in a Newton basin
  // farther out. Plain Newton from x0.
  if (std::isnan(root)) {
    double x = x0;
    for (int it = 0; it < 100; ++it) {
      const Eval e = eval_with_slope(p, dp, x);
      if (e.value == 0.0 || e.slope == 0.0) break;
      const double next = x - e.value / e.slope;
      if (!std::isfinite(next) || next == x) break;
      x = next;
    }
    if (std::isfinite(x) && acceptable(p, x, poly_eval(p, x), tol)) root = x;
  }

  if (std::isnan(root)) {
    std::ostringstream os;
    os.precision(17);
    os << "no root of " << p.to_string() << " near " << x0;
    throw NoRootNearby(os.str());
  }
  const double fr = poly_eval(p, root);
  if (!acceptable(p, root, fr, tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "root of " << p.to_string() << " near " << x0 << " misses the residual bound";
    throw NoRootNearby(os.str());
  }
  RootApprox out{p, root, std::abs(fr), false};
  out.simple = std::abs(poly_eval(dp, root)) > 1e-6 * p.scale(root);
  return out;
}

const char* to_string(PairFailure f) {
  switch (f) {
    case PairFailure::None: return "ok";
    case PairFailure::HeightNotRoot: return "height is not a root of its polynomial";
    case PairFailure::RadiusNotRoot: return "radius is not a root of its polynomial";
    case PairFailure::NotUnitCircle: return "h^2 + r^2 != 1";
  }
  return "?";
}

PairVerdict verify_pair(const IntPolynomial& height_poly, const IntPolynomial& radius_poly,
                        double h, double r) {
  if (std::abs(h * h + r * r - 1.0) > 1e-10) return {PairFailure::NotUnitCircle};
  try {
    const RootApprox rh = refine_root(height_poly, h);
    if (std::abs(rh.value - h) > 1e-9) return {PairFailure::HeightNotRoot};
  } catch (const NoRootNearby&) {
    return {PairFailure::HeightNotRoot};
  }
  try {
    const RootApprox rr = refine_root(radius_poly, r);
    if (std::abs(rr.value - r) > 1e-9) return {PairFailure::RadiusNotRoot};
  } catch (const NoRootNearby&) {
    return {PairFailure::RadiusNotRoot};
  }
  return {};
}

}  // namespace spcover
