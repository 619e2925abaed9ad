#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace conelab::sphere {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

// A point on S^{n-1}, n >= 3. The dimension travels with the value and
// every operation cross-checks it; construction rejects non-unit input.
class UnitVector {
 public:
  explicit UnitVector(Vec coords);

  // Normalizes first; rejects (near-)zero input.
  static UnitVector normalized(Vec coords);
  static UnitVector axis(std::size_t n, std::size_t i);

  std::size_t dimension() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  const Vec& coords() const { return c_; }

  friend bool operator==(const UnitVector& a, const UnitVector& b) {
    return a.c_ == b.c_;
  }

 private:
  Vec c_;
};

// Geodesic (great-circle) distance arccos<u,v>, clamped to [0,pi].
double geodesic_distance(const UnitVector& u, const UnitVector& v);

// Point at parameter t in [0,1] along the minimizing geodesic from u to v
// (slerp). Coincident or antipodal endpoints are an error: the geodesic
// is not unique there.
UnitVector geodesic_point(const UnitVector& u, const UnitVector& v, double t);

// Unit tangent at u of the geodesic toward v: normalize(v - <u,v> u).
UnitVector tangent_at(const UnitVector& u, const UnitVector& v);

// Angle at a between the geodesics toward b and toward c, in [0,pi].
double vertex_angle(const UnitVector& a, const UnitVector& b,
                    const UnitVector& c);

// Spherical triangle with side l_i opposite vertex i and angle alpha_i at
// vertex i. The three vertices span (at most) a 3-subspace, so the classical
// triangle identities apply in any ambient dimension.
struct SphericalTriangle {
  std::array<UnitVector, 3> vertices;
  std::array<double, 3> sides;
  std::array<double, 3> angles;

  static SphericalTriangle from_vertices(const UnitVector& a,
                                         const UnitVector& b,
                                         const UnitVector& c);
};

struct TriangleResiduals {
  double sines;    // max pairwise deviation of sin(l_i)/sin(alpha_i)
  double cosines;  // max over cyclic law-of-cosines defects
};

// Residuals of the law of sines and law of cosines. Refuses triangles with
// sin(l_j) sin(l_k) below 1e-12 in a denominator instead of dividing.
TriangleResiduals triangle_identities_residual(const SphericalTriangle& t);

}  // namespace conelab::sphere
