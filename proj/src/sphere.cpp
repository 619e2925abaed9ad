#include "conelab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conelab/tolerances.hpp"

namespace conelab {

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

}  // namespace conelab

namespace conelab::sphere {

namespace {

void check_same_dimension(const UnitVector& u, const UnitVector& v) {
  if (u.dimension() != v.dimension())
    throw std::invalid_argument("sphere: dimension mismatch");
}

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

UnitVector::UnitVector(Vec coords) : c_(std::move(coords)) {
  if (c_.size() < 3)
    throw std::invalid_argument("UnitVector: dimension must be >= 3");
  if (std::abs(norm(c_) - 1.0) > tolerances().unit_norm)
    throw std::invalid_argument("UnitVector: norm differs from 1 beyond tolerance");
}

UnitVector UnitVector::normalized(Vec coords) {
  const double n = norm(coords);
  if (n < 1e-14) throw std::invalid_argument("UnitVector: cannot normalize zero vector");
  for (auto& x : coords) x /= n;
  return UnitVector(std::move(coords));
}

UnitVector UnitVector::axis(std::size_t n, std::size_t i) {
  if (i >= n) throw std::invalid_argument("UnitVector::axis: index out of range");
  Vec c(n, 0.0);
  c[i] = 1.0;
  return UnitVector(std::move(c));
}

double geodesic_distance(const UnitVector& u, const UnitVector& v) {
  check_same_dimension(u, v);
  const double c = dot(u.coords(), v.coords());
  // arccos(<u,v>), evaluated through the chord near the ends where acos
  // loses half the working precision.
  if (c > 0.95 || c < -0.95) {
    double q = 0.0;
    for (std::size_t i = 0; i < u.dimension(); ++i) {
      const double d = c > 0.0 ? u[i] - v[i] : u[i] + v[i];
      q += d * d;
    }
    const double half = std::min(std::sqrt(q) / 2.0, 1.0);
    return c > 0.0 ? 2.0 * std::asin(half) : M_PI - 2.0 * std::asin(half);
  }
  return std::acos(clamp1(c));
}

UnitVector geodesic_point(const UnitVector& u, const UnitVector& v, double t) {
  check_same_dimension(u, v);
  if (t < 0.0 || t > 1.0)
    throw std::invalid_argument("geodesic_point: t outside [0,1]");
  const double c = clamp1(dot(u.coords(), v.coords()));
  const double theta = std::acos(c);
  const double s = std::sin(theta);
  if (s < tolerances().degenerate)
    throw std::invalid_argument("geodesic_point: degenerate geodesic");
  const double a = std::sin((1.0 - t) * theta) / s;
  const double b = std::sin(t * theta) / s;
  Vec p(u.dimension());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a * u[i] + b * v[i];
  return UnitVector::normalized(std::move(p));
}

UnitVector tangent_at(const UnitVector& u, const UnitVector& v) {
  check_same_dimension(u, v);
  const double c = dot(u.coords(), v.coords());
  Vec t(u.dimension());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = v[i] - c * u[i];
  const double n = norm(t);
  if (n < tolerances().degenerate)
    throw std::invalid_argument("tangent_at: degenerate pair");
  for (auto& x : t) x /= n;
  return UnitVector(std::move(t));
}

double vertex_angle(const UnitVector& a, const UnitVector& b,
                    const UnitVector& c) {
  const UnitVector tb = tangent_at(a, b);
  const UnitVector tc = tangent_at(a, c);
  return std::acos(clamp1(dot(tb.coords(), tc.coords())));
}

SphericalTriangle SphericalTriangle::from_vertices(const UnitVector& a,
                                                   const UnitVector& b,
                                                   const UnitVector& c) {
  SphericalTriangle t{{a, b, c},
                      {geodesic_distance(b, c), geodesic_distance(a, c),
                       geodesic_distance(a, b)},
                      {vertex_angle(a, b, c), vertex_angle(b, a, c),
                       vertex_angle(c, a, b)}};
  for (double l : t.sides)
    if (l <= 0.0 || l >= M_PI)
      throw std::invalid_argument("SphericalTriangle: side outside (0,pi)");
  return t;
}

TriangleResiduals triangle_identities_residual(const SphericalTriangle& t) {
  std::array<double, 3> sl{}, sa{}, cl{}, ca{};
  for (int i = 0; i < 3; ++i) {
    sl[i] = std::sin(t.sides[i]);
    sa[i] = std::sin(t.angles[i]);
    cl[i] = std::cos(t.sides[i]);
    ca[i] = std::cos(t.angles[i]);
  }
  TriangleResiduals r{0.0, 0.0};
  std::array<double, 3> q{};
  for (int i = 0; i < 3; ++i) {
    if (sa[i] < 1e-12)
      throw std::invalid_argument("triangle_identities_residual: degenerate angle");
    q[i] = sl[i] / sa[i];
  }
  for (int i = 0; i < 3; ++i)
    r.sines = std::max(r.sines, std::abs(q[i] - q[(i + 1) % 3]));
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double denom = sl[j] * sl[k];
    if (denom < 1e-12)
      throw std::invalid_argument("triangle_identities_residual: degenerate side");
    r.cosines = std::max(r.cosines,
                         std::abs(ca[i] - (cl[i] - cl[j] * cl[k]) / denom));
  }
  return r;
}

}  // namespace conelab::sphere
