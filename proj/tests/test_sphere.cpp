#include <doctest.h>

#include <cmath>

#include "conelab/rng.hpp"
#include "conelab/sphere.hpp"

using namespace conelab;
using sphere::UnitVector;

namespace {

UnitVector e(std::size_t n, std::size_t i) { return UnitVector::axis(n, i); }

UnitVector random_unit(Rng& rng, std::size_t n) {
  return UnitVector::normalized(rng.normal_vector(n));
}

}  // namespace

TEST_CASE("geodesic distance basics") {
  const auto e1 = e(3, 0), e2 = e(3, 1);
  CHECK(sphere::geodesic_distance(e1, e1) == doctest::Approx(0.0));
  UnitVector m1(std::vector<double>{-1.0, 0.0, 0.0});
  CHECK(sphere::geodesic_distance(e1, m1) == doctest::Approx(M_PI));
  CHECK(sphere::geodesic_distance(e1, e2) == doctest::Approx(M_PI / 2));
  CHECK_THROWS(sphere::geodesic_distance(e1, e(4, 0)));
  CHECK_THROWS(UnitVector(std::vector<double>{1.0, 1e-5, 0.0}));
}

TEST_CASE("geodesic distance symmetry and triangle inequality") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 3 + rng.index(3);
    const auto a = random_unit(rng, n), b = random_unit(rng, n),
               c = random_unit(rng, n);
    CHECK(sphere::geodesic_distance(a, b) ==
          doctest::Approx(sphere::geodesic_distance(b, a)).epsilon(1e-14));
    CHECK(sphere::geodesic_distance(a, c) <=
          sphere::geodesic_distance(a, b) + sphere::geodesic_distance(b, c) + 1e-12);
  }
}

TEST_CASE("geodesic point endpoints, symmetry, arc-length fractions") {
  const auto e1 = e(4, 0), e2 = e(4, 1);
  CHECK(sphere::geodesic_point(e1, e2, 0.0) == e1);
  const auto mid = sphere::geodesic_point(e1, e2, 0.5);
  CHECK(mid[0] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(mid[1] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  // Frozen from the arc-length reparameterization: one third of a right
  // angle is pi/6.
  const auto third = sphere::geodesic_point(e1, e2, 1.0 / 3.0);
  CHECK(third[0] == doctest::Approx(std::cos(M_PI / 6)).epsilon(1e-15));
  CHECK(third[1] == doctest::Approx(std::sin(M_PI / 6)).epsilon(1e-15));
  UnitVector m1(std::vector<double>{-1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_WITH(sphere::geodesic_point(e1, m1, 0.5),
                    doctest::Contains("degenerate"));
  CHECK_THROWS(sphere::geodesic_point(e1, e1, 0.5));
}

TEST_CASE("geodesic point stays unit and parameterizes by arc length") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 3 + rng.index(3);
    const auto a = random_unit(rng, n);
    auto b = random_unit(rng, n);
    const double d = sphere::geodesic_distance(a, b);
    if (d < 0.2 || d > M_PI - 0.2) continue;
    const double t = rng.uniform();
    const auto p = sphere::geodesic_point(a, b, t);
    CHECK(std::abs(sphere::norm(p.coords()) - 1.0) <= 1e-12);
    CHECK(sphere::geodesic_distance(a, p) == doctest::Approx(t * d).epsilon(1e-10));
  }
}

TEST_CASE("tangent_at agrees with the finite-difference oracle") {
  const auto e1 = e(3, 0), e2 = e(3, 1);
  CHECK(sphere::tangent_at(e1, e2) == e2);
  // Oracle: d/dt geodesic_point(u, v, t) at t -> 0, normalized.
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 3 + rng.index(2);
    const auto u = random_unit(rng, n);
    auto v = random_unit(rng, n);
    const double d = sphere::geodesic_distance(u, v);
    if (d < 0.2 || d > M_PI - 0.2) continue;
    const auto t = sphere::tangent_at(u, v);
    CHECK(std::abs(sphere::dot(t.coords(), u.coords())) <= 1e-12);
    const double h = 1e-6;
    const auto p = sphere::geodesic_point(u, v, h);
    for (std::size_t k = 0; k < n; ++k) {
      const double fd = (p[k] - u[k]) / (h * d);
      CHECK(fd == doctest::Approx(t[k]).epsilon(1e-5).scale(1.0));
    }
  }
  // Points on one great circle through e1 all share the tangent e2.
  for (double theta : {0.3, 1.0, 2.0, 3.0}) {
    UnitVector v(std::vector<double>{std::cos(theta), std::sin(theta), 0.0});
    const auto t = sphere::tangent_at(e1, v);
    CHECK(t[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(t[1] == doctest::Approx(1.0));
  }
  CHECK_THROWS(sphere::tangent_at(e1, e1));
}

TEST_CASE("vertex angle: octant and tetrahedron values") {
  const auto e1 = e(3, 0), e2 = e(3, 1), e3 = e(3, 2);
  CHECK(sphere::vertex_angle(e1, e2, e3) == doctest::Approx(M_PI / 2));
  // Equilateral triangle with side arccos(-1/3) has 2pi/3 angles.
  const double s = 1.0 / std::sqrt(3.0);
  UnitVector a(std::vector<double>{s, s, s});
  UnitVector b(std::vector<double>{s, -s, -s});
  UnitVector c(std::vector<double>{-s, s, -s});
  CHECK(sphere::vertex_angle(a, b, c) ==
        doctest::Approx(2.0 * M_PI / 3).epsilon(1e-12));
  CHECK(sphere::geodesic_distance(a, b) ==
        doctest::Approx(std::acos(-1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("vertex angle agrees with the law-of-cosines route") {
  Rng rng(31);
  int done = 0;
  while (done < 200) {
    const std::size_t n = 3 + rng.index(3);
    const auto a = random_unit(rng, n), b = random_unit(rng, n),
               c = random_unit(rng, n);
    const double l3 = sphere::geodesic_distance(a, b);
    const double l2 = sphere::geodesic_distance(a, c);
    const double l1 = sphere::geodesic_distance(b, c);
    if (std::min({l1, l2, l3}) < 0.1 || std::max({l1, l2, l3}) > M_PI - 0.1)
      continue;
    ++done;
    const double lhs = std::cos(sphere::vertex_angle(a, b, c));
    const double rhs =
        (std::cos(l1) - std::cos(l2) * std::cos(l3)) / (std::sin(l2) * std::sin(l3));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("triangle identities on canonical triangles") {
  const double s = 1.0 / std::sqrt(3.0);
  const auto tetra = sphere::SphericalTriangle::from_vertices(
      UnitVector(std::vector<double>{s, s, s}),
      UnitVector(std::vector<double>{s, -s, -s}),
      UnitVector(std::vector<double>{-s, s, -s}));
  for (double l : tetra.sides)
    CHECK(l == doctest::Approx(std::acos(-1.0 / 3.0)).epsilon(1e-12));
  for (double a : tetra.angles)
    CHECK(a == doctest::Approx(2.0 * M_PI / 3).epsilon(1e-12));
  const auto res = sphere::triangle_identities_residual(tetra);
  CHECK(res.sines < 1e-9);
  CHECK(res.cosines < 1e-9);

  const auto octant = sphere::SphericalTriangle::from_vertices(e(3, 0), e(3, 1), e(3, 2));
  const auto res2 = sphere::triangle_identities_residual(octant);
  CHECK(res2.sines < 1e-12);
  CHECK(res2.cosines < 1e-12);
}

TEST_CASE("law of sines and cosines over a random battery") {
  Rng rng(41);
  double worst_s = 0.0, worst_c = 0.0;
  int done = 0;
  while (done < 1000) {
    const std::size_t n = 3 + rng.index(3);
    const auto a = random_unit(rng, n), b = random_unit(rng, n),
               c = random_unit(rng, n);
    const double l1 = sphere::geodesic_distance(b, c);
    const double l2 = sphere::geodesic_distance(a, c);
    const double l3 = sphere::geodesic_distance(a, b);
    if (std::min({l1, l2, l3}) < 0.05 || std::max({l1, l2, l3}) > M_PI - 0.05)
      continue;
    ++done;
    const auto t = sphere::SphericalTriangle::from_vertices(a, b, c);
    const auto res = sphere::triangle_identities_residual(t);
    worst_s = std::max(worst_s, res.sines);
    worst_c = std::max(worst_c, res.cosines);
  }
  CHECK(worst_s < 1e-8);
  CHECK(worst_c < 1e-8);
}

TEST_CASE("degenerate triangle denominators are refused") {
  // Nearly collinear vertices: sin(l2) sin(l3) underflows the guard.
  UnitVector a(std::vector<double>{1.0, 0.0, 0.0});
  const double eps = 1e-7;
  const auto b = UnitVector::normalized({std::cos(eps), std::sin(eps), 0.0});
  const auto c = UnitVector::normalized({std::cos(2 * eps), std::sin(2 * eps), 1e-9});
  CHECK_THROWS_WITH(
      sphere::triangle_identities_residual(
          sphere::SphericalTriangle::from_vertices(a, b, c)),
      doctest::Contains("degenerate"));
}
