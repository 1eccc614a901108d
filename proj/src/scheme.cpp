#include "spcover/scheme.hpp"

#include <unsupported/Eigen/AutoDiff>

#include <cmath>
#include <map>
#include <sstream>

namespace spcover {

namespace {

using Eigen::VectorXd;
template <class T>
using P3 = Eigen::Matrix<T, 3, 1>;
template <class T>
using PVec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
using AD = Eigen::AutoDiffScalar<VectorXd>;

template <class T>
T s1(const T& a) {
  using std::sqrt;
  return sqrt(T(1.0) - a * a);
}

template <class T>
T s2(const T& a, const T& b) {
  using std::sqrt;
  return sqrt(T(1.0) - a * a - b * b);
}

// Constant with a zero derivative vector of the right length; AutoDiff
// mishandles empty derivatives inside products.
inline double konst(double v, double) { return v; }
inline AD konst(double v, const AD& like) { return AD(v, VectorXd::Zero(like.derivatives().size())); }

template <class T>
P3<T> pt(const T& x, const T& y, const T& z) {
  return P3<T>(x, y, z);
}

const double kR3 = std::sqrt(3.0);

// Exact (cos, sin) for multiples of 30 degrees.
std::pair<double, double> exact_dir(int deg) {
  deg = ((deg % 360) + 360) % 360;
  switch (deg) {
    case 0: return {1, 0};
    case 30: return {kR3 / 2, 0.5};
    case 60: return {0.5, kR3 / 2};
    case 90: return {0, 1};
    case 120: return {-0.5, kR3 / 2};
    case 150: return {-kR3 / 2, 0.5};
    case 180: return {-1, 0};
    case 210: return {-kR3 / 2, -0.5};
    case 240: return {-0.5, -kR3 / 2};
    case 270: return {0, -1};
    case 300: return {0.5, -kR3 / 2};
    case 330: return {kR3 / 2, -0.5};
  }
  throw DomainError("azimuth is not a multiple of 30 degrees");
}

template <class T>
P3<T> rotz(const P3<T>& p, int deg) {
  const auto [c, s] = exact_dir(deg);
  return P3<T>(c * p.x() - s * p.y(), s * p.x() + c * p.y(), p.z());
}

// Base point followed by its rotations through `first` and -`first` degrees.
template <class T>
void triangle(std::vector<P3<T>>& out, const P3<T>& base, int first) {
  out.push_back(base);
  out.push_back(rotz(base, first));
  out.push_back(rotz(base, -first));
}

template <class T>
void ring6(std::vector<P3<T>>& out, const T& z, std::initializer_list<int> az) {
  const T rho = s1(z);
  for (int deg : az) {
    const auto [c, s] = exact_dir(deg);
    out.push_back(pt(T(c * rho), T(s * rho), z));
  }
}

double mean(std::initializer_list<double> v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

struct Tri9 {
  static constexpr const char* kId = "tri9";
  static constexpr std::size_t kN = 9, kK = 1;
  static constexpr const char* kStructure =
      "three stacked equilateral triangles: heights a, 0, -a; the outer two rotated 180 deg from the equatorial one";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T a = q[0], r = s1(a);
    const T h(0.5), k(kR3 / 2);
    return {pt(r, T(0), a),       pt(T(-r / 2), T(k * r), a),  pt(T(-r / 2), T(-k * r), a),
            pt(h, k, T(0)),       pt(T(-1), T(0), T(0)),       pt(h, T(-k), T(0)),
            pt(r, T(0), T(-a)),   pt(T(-r / 2), T(k * r), T(-a)), pt(T(-r / 2), T(-k * r), T(-a))};
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(1);
    q << mean({c[0].z(), c[1].z(), c[2].z(), -c[6].z(), -c[7].z(), -c[8].z()});
    return q;
  }
};

struct Dipole11 {
  static constexpr const char* kId = "dipole11";
  static constexpr std::size_t kN = 11, kK = 10;
  static constexpr const char* kStructure =
      "pole cap plus 5 dipoles, each a pair swapped by the half turn about z; parameters a-j";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T a = q[0], b = q[1], c = q[2], d = q[3], e = q[4], f = q[5], g = q[6], h = q[7], i = q[8],
            j = q[9];
    return {pt(T(0), T(0), T(1)),        pt(b, s2(a, b), a),           pt(T(-b), T(-s2(a, b)), a),
            pt(T(-d), s2(c, d), c),      pt(d, T(-s2(c, d)), c),       pt(f, s2(e, f), T(-e)),
            pt(T(-f), T(-s2(e, f)), T(-e)), pt(h, T(-s2(g, h)), T(-g)), pt(T(-h), s2(g, h), T(-g)),
            pt(j, s2(i, j), T(-i)),      pt(T(-j), T(-s2(i, j)), T(-i))};
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(10);
    q << c[1].z(), c[1].x(), c[3].z(), -c[3].x(), -c[5].z(), c[5].x(), -c[7].z(), c[7].x(), -c[9].z(),
        c[9].x();
    return q;
  }
};

struct Mirror13 {
  static constexpr const char* kId = "mirror13";
  static constexpr std::size_t kN = 13, kK = 6;
  static constexpr const char* kStructure =
      "equatorial mirror: 5 equatorial caps, 4 mirrored pairs at heights a, b, c; parameters a-f";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T a = q[0], b = q[1], c = q[2], d = q[3], e = q[4], f = q[5];
    const T z(0);
    return {pt(s1(a), z, a),          pt(T(-s1(b)), z, b),      pt(T(-d), s2(c, d), c),
            pt(T(-d), T(-s2(c, d)), c), pt(T(1), z, z),         pt(e, s1(e), z),
            pt(T(-f), s1(f), z),      pt(T(-f), T(-s1(f)), z),  pt(e, T(-s1(e)), z),
            pt(T(-d), T(-s2(c, d)), T(-c)), pt(T(-d), s2(c, d), T(-c)), pt(T(-s1(b)), z, T(-b)),
            pt(s1(a), z, T(-a))};
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(6);
    q << mean({c[0].z(), -c[12].z()}), mean({c[1].z(), -c[11].z()}),
        mean({c[2].z(), c[3].z(), -c[9].z(), -c[10].z()}), -mean({c[2].x(), c[3].x(), c[9].x(), c[10].x()}),
        mean({c[5].x(), c[8].x()}), -mean({c[6].x(), c[7].x()});
    return q;
  }
};

struct Hex14 {
  static constexpr const char* kId = "hex14";
  static constexpr std::size_t kN = 14, kK = 1;
  static constexpr const char* kStructure =
      "two poles plus two regular hexagons at heights t and -t, the lower one turned 30 deg";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T t = q[0];
    std::vector<P3<T>> out{pt(T(0), T(0), T(1))};
    ring6(out, t, {-60, 120, 60, -120, 0, 180});
    ring6(out, T(-t), {-90, 90, -30, 150, 30, -150});
    out.push_back(pt(T(0), T(0), T(-1)));
    return out;
  }
  static VectorXd guess(const SphericalCode& c) {
    double s = 0;
    for (int i = 1; i <= 6; ++i) s += c[i].z() - c[i + 6].z();
    VectorXd q(1);
    q << s / 12;
    return q;
  }
};

struct Mirror15 {
  static constexpr const char* kId = "mirror15";
  static constexpr std::size_t kN = 15, kK = 6;
  static constexpr const char* kStructure =
      "equatorial mirror: caps at (-1/2, 0, +-sqrt3/2), 5 equatorial caps, mirrored pairs at heights a, c; "
      "parameters a-f";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T a = q[0], b = q[1], c = q[2], d = q[3], e = q[4], f = q[5];
    const T z(0);
    return {pt(T(-0.5), z, T(kR3 / 2)), pt(b, s2(a, b), a),           pt(b, T(-s2(a, b)), a),
            pt(T(-d), s2(c, d), c),     pt(T(-d), T(-s2(c, d)), c),   pt(T(1), z, z),
            pt(T(-e), s1(e), z),        pt(T(-e), T(-s1(e)), z),      pt(f, s1(f), z),
            pt(f, T(-s1(f)), z),        pt(T(-d), T(-s2(c, d)), T(-c)), pt(T(-d), s2(c, d), T(-c)),
            pt(b, T(-s2(a, b)), T(-a)), pt(b, s2(a, b), T(-a)),       pt(T(-0.5), z, T(-kR3 / 2))};
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(6);
    q << c[1].z(), c[1].x(), c[3].z(), -c[3].x(), -c[6].x(), c[8].x();
    return q;
  }
};

struct Mirror17 {
  static constexpr const char* kId = "mirror17";
  static constexpr std::size_t kN = 17, kK = 8;
  static constexpr const char* kStructure =
      "equatorial mirror: 5 equatorial caps, mirrored caps at heights a, b, d, e; parameters a-h";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T a = q[0], b = q[1], c = q[2], d = q[3], e = q[4], f = q[5], g = q[6], h = q[7];
    const T z(0);
    return {pt(s1(a), z, a),           pt(T(-c), s2(b, c), b),        pt(T(-c), T(-s2(b, c)), b),
            pt(T(-s1(d)), z, d),       pt(f, s2(e, f), e),            pt(f, T(-s2(e, f)), e),
            pt(T(1), z, z),            pt(T(-g), s1(g), z),           pt(T(-g), T(-s1(g)), z),
            pt(T(-h), s1(h), z),       pt(T(-h), T(-s1(h)), z),       pt(f, T(-s2(e, f)), T(-e)),
            pt(f, s2(e, f), T(-e)),    pt(T(-s1(d)), z, T(-d)),       pt(T(-c), T(-s2(b, c)), T(-b)),
            pt(T(-c), s2(b, c), T(-b)), pt(s1(a), z, T(-a))};
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(8);
    q << c[0].z(), c[1].z(), -c[1].x(), c[3].z(), c[4].z(), c[4].x(), -c[7].x(), -c[9].x();
    return q;
  }
};

struct Tri18 {
  static constexpr const char* kId = "tri18";
  static constexpr std::size_t kN = 18, kK = 8;
  static constexpr const char* kStructure =
      "six equilateral triangles about z at heights a, b, d, -d, -b, -a; the top one at azimuth 45 deg; "
      "parameters a-h";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T a = q[0], b = q[1], c = q[2], d = q[3], e = q[4], f = q[5], g = q[6], h = q[7];
    const T r = s1(a) / std::sqrt(2.0);
    std::vector<P3<T>> out;
    triangle(out, pt(r, r, a), -120);
    triangle(out, pt(c, T(-s2(b, c)), b), -120);
    triangle(out, pt(e, s2(d, e), d), 120);
    triangle(out, pt(f, T(-s2(d, f)), T(-d)), -120);
    triangle(out, pt(g, s2(b, g), T(-b)), 120);
    triangle(out, pt(h, s2(a, h), T(-a)), 120);
    return out;
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(8);
    q << mean({c[0].z(), c[1].z(), c[2].z(), -c[15].z(), -c[16].z(), -c[17].z()}),
        mean({c[3].z(), -c[12].z()}), c[3].x(), mean({c[6].z(), -c[9].z()}), c[6].x(), c[9].x(), c[12].x(),
        c[15].x();
    return q;
  }
};

struct Mirror20 {
  static constexpr const char* kId = "mirror20";
  static constexpr std::size_t kN = 20, kK = 5;
  static constexpr const char* kStructure =
      "equatorial hexagon plus 2 embedded rectangles and a mirrored triple; parameters a-e";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T a = q[0], b = q[1], c = q[2], d = q[3], e = q[4];
    const T z(0), w = s2(c, d);
    return {pt(z, T(-s1(a)), a), pt(z, s1(b), b),       pt(d, w, c),          pt(T(-d), w, c),
            pt(c, T(-w), d),     pt(T(-c), T(-w), d),   pt(z, T(-s1(e)), e),  pt(a, s1(a), z),
            pt(T(-a), s1(a), z), pt(b, T(-s1(b)), z),   pt(T(-b), T(-s1(b)), z), pt(e, s1(e), z),
            pt(T(-e), s1(e), z), pt(z, T(-s1(e)), T(-e)), pt(c, T(-w), T(-d)), pt(T(-c), T(-w), T(-d)),
            pt(d, w, T(-c)),     pt(T(-d), w, T(-c)),   pt(z, s1(b), T(-b)),  pt(z, T(-s1(a)), T(-a))};
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(5);
    q << c[0].z(), c[1].z(), c[2].z(), c[2].x(), c[6].z();
    return q;
  }
};

struct Pent22 {
  static constexpr const char* kId = "pent22";
  static constexpr std::size_t kN = 22, kK = 6;
  static constexpr const char* kStructure =
      "two poles plus 4 irregular pentagons at heights a, d, -d, -a; parameters a-f";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T a = q[0], b = q[1], c = q[2], d = q[3], e = q[4], f = q[5];
    const T z(0);
    return {pt(z, z, T(1)),
            pt(s1(a), z, a), pt(b, s2(a, b), a), pt(T(-c), s2(a, c), a), pt(T(-c), T(-s2(a, c)), a),
            pt(b, T(-s2(a, b)), a),
            pt(T(-s1(d)), z, d), pt(T(-e), T(-s2(d, e)), d), pt(f, T(-s2(d, f)), d), pt(f, s2(d, f), d),
            pt(T(-e), s2(d, e), d),
            pt(s1(d), z, T(-d)), pt(e, s2(d, e), T(-d)), pt(T(-f), s2(d, f), T(-d)),
            pt(T(-f), T(-s2(d, f)), T(-d)), pt(e, T(-s2(d, e)), T(-d)),
            pt(T(-s1(a)), z, T(-a)), pt(T(-b), T(-s2(a, b)), T(-a)), pt(c, T(-s2(a, c)), T(-a)),
            pt(c, s2(a, c), T(-a)), pt(T(-b), s2(a, b), T(-a)),
            pt(z, z, T(-1))};
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(6);
    q << c[1].z(), c[2].x(), -c[3].x(), c[6].z(), -c[7].x(), c[8].x();
    return q;
  }
};

struct Tri38 {
  static constexpr const char* kId = "tri38";
  static constexpr std::size_t kN = 38, kK = 3;
  static constexpr const char* kStructure =
      "two poles plus 6 hexagonal rings (12 equilateral triangles) at heights a, b, c, -c, -b, -a";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    const T a = q[0], b = q[1], c = q[2];
    std::vector<P3<T>> out{pt(T(0), T(0), T(1))};
    ring6(out, a, {90, 30, -30, -90, -150, 150});
    ring6(out, b, {0, 60, 120, 180, 240, 300});
    ring6(out, c, {90, 30, -30, -90, -150, 150});
    ring6(out, T(-c), {0, 60, 120, 180, 240, 300});
    ring6(out, T(-b), {90, 30, -30, -90, -150, 150});
    ring6(out, T(-a), {0, 60, 120, 180, 240, 300});
    out.push_back(pt(T(0), T(0), T(-1)));
    return out;
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(3);
    q << mean({c[1].z(), -c[31].z()}), mean({c[7].z(), -c[25].z()}), mean({c[13].z(), -c[19].z()});
    return q;
  }
};

struct Tri42 {
  static constexpr const char* kId = "tri42";
  static constexpr std::size_t kN = 42, kK = 20;
  static constexpr const char* kStructure =
      "14 equilateral triangles about z, 7 at heights z1..z7 and 7 at -z1..-z7, each with its own azimuth; "
      "parameters z1..z7, the upper azimuths 2..7 (the first is 0), the lower azimuths 1..7";
  template <class T>
  static std::vector<P3<T>> make(const PVec<T>& q) {
    using std::cos;
    using std::sin;
    std::vector<P3<T>> out;
    for (int half = 0; half < 2; ++half) {
      for (int k = 0; k < 7; ++k) {
        const T zk = half == 0 ? q[k] : T(-q[k]);
        const T psi = half == 0 ? (k == 0 ? T(konst(0.0, q[0])) : q[7 + k - 1]) : q[13 + k];
        const T r = s1(zk);
        triangle(out, pt(T(r * cos(psi)), T(r * sin(psi)), zk), 120);
      }
    }
    return out;
  }
  // Turns the first cap to azimuth 0.
  static Rotation gauge(const SphericalCode& c) {
    return Rotation::about_axis(Vec3::UnitZ(), -std::atan2(c[0].y(), c[0].x()));
  }
  static VectorXd guess(const SphericalCode& c) {
    VectorXd q(20);
    for (int k = 0; k < 7; ++k) {
      double zs = 0;
      for (int m = 0; m < 3; ++m) zs += c[3 * k + m].z() - c[21 + 3 * k + m].z();
      q[k] = zs / 6;
    }
    const double psi0 = std::atan2(c[0].y(), c[0].x());
    auto az = [&](int cap) { return std::remainder(std::atan2(c[cap].y(), c[cap].x()) - psi0, 2 * kPi); };
    for (int k = 1; k < 7; ++k) q[7 + k - 1] = az(3 * k);
    for (int k = 0; k < 7; ++k) q[13 + k] = az(21 + 3 * k);
    return q;
  }
};

template <class T>
std::vector<P3<T>> generic_points(std::size_t n, const PVec<T>& q) {
  using std::cos;
  using std::sin;
  std::vector<P3<T>> out;
  out.push_back(pt(T(0), T(0), T(1)));
  out.push_back(pt(T(sin(q[0])), T(0), T(cos(q[0]))));
  for (std::size_t i = 2; i < n; ++i) {
    const T th = q[2 * i - 3], ph = q[2 * i - 2];
    out.push_back(pt(T(sin(th) * cos(ph)), T(sin(th) * sin(ph)), T(cos(th))));
  }
  return out;
}

template <class Build>
Eigen::MatrixXd autodiff_jacobian(const VectorXd& q, std::size_t n, Build build) {
  const Eigen::Index k = q.size();
  PVec<AD> x(k);
  for (Eigen::Index i = 0; i < k; ++i) x[i] = AD(q[i], k, i);
  const std::vector<P3<AD>> pts = build(x);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(3 * static_cast<Eigen::Index>(n), k);
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < 3; ++c) {
      const VectorXd& d = pts[i][c].derivatives();
      if (d.size() == k) J.row(3 * static_cast<Eigen::Index>(i) + c) = d.transpose();
    }
  return J;
}

void check_count(const VectorXd& q, std::size_t k, const std::string& id) {
  if (static_cast<std::size_t>(q.size()) != k) {
    std::ostringstream os;
    os << "scheme " << id << " takes " << k << " parameters, got " << q.size();
    throw DomainError(os.str());
  }
}

void check_size(const SphericalCode& c, std::size_t n, const std::string& id) {
  if (c.size() != n) {
    std::ostringstream os;
    os << "scheme " << id << " needs " << n << " caps, code has " << c.size();
    throw SchemeMismatch(os.str());
  }
}

template <class D>
class TableScheme final : public SymmetryScheme {
 public:
  std::string id() const override { return D::kId; }
  std::size_t num_caps() const override { return D::kN; }
  std::size_t free_parameters() const override { return D::kK; }
  std::string structure() const override { return D::kStructure; }

  std::vector<Vec3> points(const VectorXd& q) const override {
    check_count(q, D::kK, D::kId);
    return D::template make<double>(q);
  }
  Eigen::MatrixXd jacobian(const VectorXd& q) const override {
    check_count(q, D::kK, D::kId);
    return autodiff_jacobian(q, D::kN, [](const PVec<AD>& x) { return D::template make<AD>(x); });
  }
  VectorXd initial_guess(const SphericalCode& c) const override {
    check_size(c, D::kN, D::kId);
    return D::guess(c);
  }
  Rotation gauge(const SphericalCode& c) const override {
    check_size(c, D::kN, D::kId);
    if constexpr (requires { D::gauge(c); })
      return D::gauge(c);
    else
      return Rotation();
  }
};

class GenericScheme final : public SymmetryScheme {
 public:
  explicit GenericScheme(std::size_t n) : n_(n) {
    if (n < 2) throw DomainError("generic scheme needs n >= 2");
  }
  std::string id() const override { return "generic"; }
  std::size_t num_caps() const override { return n_; }
  std::size_t free_parameters() const override { return 2 * n_ - 3; }
  std::string structure() const override {
    return "gauge-fixed spherical coordinates: cap 1 at +z, cap 2 in the half-plane y = 0, x >= 0";
  }
  bool free_motion() const override { return true; }

  std::vector<Vec3> points(const VectorXd& q) const override {
    check_count(q, free_parameters(), "generic");
    return generic_points<double>(n_, q);
  }
  Eigen::MatrixXd jacobian(const VectorXd& q) const override {
    check_count(q, free_parameters(), "generic");
    const std::size_t n = n_;
    return autodiff_jacobian(q, n, [n](const PVec<AD>& x) { return generic_points<AD>(n, x); });
  }
  Rotation gauge(const SphericalCode& c) const override {
    check_size(c, n_, "generic");
    const Rotation r1 = rot3(c[0], UnitVector3(0, 0, 1));
    const Vec3 q2 = r1.apply(c[1].vec());
    if (std::hypot(q2.x(), q2.y()) < 1e-9) return r1;
    return Rotation::about_axis(Vec3::UnitZ(), -std::atan2(q2.y(), q2.x())) * r1;
  }
  VectorXd initial_guess(const SphericalCode& c) const override {
    check_size(c, n_, "generic");
    const Rotation g = gauge(c);
    VectorXd q(free_parameters());
    for (std::size_t i = 1; i < n_; ++i) {
      const Vec3 p = g.apply(c[i].vec());
      const double th = std::atan2(std::hypot(p.x(), p.y()), p.z());
      if (i == 1) {
        q[0] = th;
      } else {
        q[2 * i - 3] = th;
        q[2 * i - 2] = std::atan2(p.y(), p.x());
      }
    }
    return q;
  }

 private:
  std::size_t n_;
};

const std::map<std::string, SchemePtr, std::less<>>& registry() {
  static const std::map<std::string, SchemePtr, std::less<>> reg{
      {Tri9::kId, std::make_shared<TableScheme<Tri9>>()},
      {Dipole11::kId, std::make_shared<TableScheme<Dipole11>>()},
      {Mirror13::kId, std::make_shared<TableScheme<Mirror13>>()},
      {Hex14::kId, std::make_shared<TableScheme<Hex14>>()},
      {Mirror15::kId, std::make_shared<TableScheme<Mirror15>>()},
      {Mirror17::kId, std::make_shared<TableScheme<Mirror17>>()},
      {Tri18::kId, std::make_shared<TableScheme<Tri18>>()},
      {Mirror20::kId, std::make_shared<TableScheme<Mirror20>>()},
      {Pent22::kId, std::make_shared<TableScheme<Pent22>>()},
      {Tri38::kId, std::make_shared<TableScheme<Tri38>>()},
      {Tri42::kId, std::make_shared<TableScheme<Tri42>>()},
  };
  return reg;
}

}  // namespace

SchemePtr generic_scheme(std::size_t n) { return std::make_shared<GenericScheme>(n); }

SchemePtr named_scheme(std::string_view id) {
  const auto& reg = registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw DomainError("unknown scheme '" + std::string(id) + "'");
  return it->second;
}

SchemePtr make_scheme(std::string_view id, std::size_t n) {
  if (id == "generic") return generic_scheme(n);
  SchemePtr s = named_scheme(id);
  if (s->num_caps() != n) {
    std::ostringstream os;
    os << "scheme " << id << " is for " << s->num_caps() << " caps, not " << n;
    throw SchemeMismatch(os.str());
  }
  return s;
}

std::vector<std::string> scheme_ids() {
  std::vector<std::string> ids{"generic"};
  for (const auto& [k, v] : registry()) ids.push_back(k);
  return ids;
}

SphericalCode params_to_code(const SymmetryScheme& scheme, const VectorXd& params) {
  const std::vector<Vec3> pts = scheme.points(params);
  for (const Vec3& p : pts)
    if (!p.allFinite()) throw DomainError("scheme parameters leave the unit sphere (" + scheme.id() + ")");
  return SphericalCode::from_vectors(pts);
}

VectorXd code_to_params(const SymmetryScheme& scheme, const SphericalCode& code, double max_residual) {
  if (code.size() != scheme.num_caps()) {
    std::ostringstream os;
    os << "scheme " << scheme.id() << " needs " << scheme.num_caps() << " caps, code has " << code.size();
    throw SchemeMismatch(os.str());
  }
  const SphericalCode target = code.rotated(scheme.gauge(code));
  const std::size_t n = code.size();
  VectorXd target_vec(3 * n);
  for (std::size_t i = 0; i < n; ++i) target_vec.segment<3>(3 * i) = target[i].vec();

  auto residual = [&](const VectorXd& q, VectorXd& r) {
    const auto pts = scheme.points(q);
    r.resize(3 * n);
    for (std::size_t i = 0; i < n; ++i) r.segment<3>(3 * i) = pts[i] - target_vec.segment<3>(3 * i);
    return r.allFinite();
  };

  VectorXd q = scheme.initial_guess(target);
  VectorXd r;
  if (!residual(q, r)) throw SchemeMismatch("code is too far from the " + scheme.id() + " scheme");
  double cost = r.squaredNorm();
  for (int it = 0; it < 60 && cost > 0.0; ++it) {
    const Eigen::MatrixXd J = scheme.jacobian(q);
    const VectorXd step = J.colPivHouseholderQr().solve(-r);
    // Backtrack if the full step leaves the domain or raises the cost.
    double t = 1.0;
    VectorXd trial, rt;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
      trial = q + t * step;
      if (residual(trial, rt) && rt.squaredNorm() <= cost) {
        improved = true;
        break;
      }
    }
    if (!improved) break;
    const double drop = cost - rt.squaredNorm();
    q = trial;
    r = rt;
    cost = r.squaredNorm();
    if (step.norm() * t < 1e-16 || drop == 0.0) break;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, r.segment<3>(3 * i).norm());
  if (worst > max_residual) {
    std::ostringstream os;
    os.precision(3);
    os << "code is " << worst << " from the " << scheme.id() << " scheme (limit " << max_residual << ")";
    throw SchemeMismatch(os.str());
  }
  return q;
}

}  // namespace spcover
