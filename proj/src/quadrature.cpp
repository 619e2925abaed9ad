#include "conelab/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace conelab::quad {

namespace {

Rule compute_rule(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  const double eps = 1e-15;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess for the i-th root.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < eps) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int order) {
  if (order < 1 || order > 512) throw std::invalid_argument("gauss_legendre: order out of range");
  static std::map<int, Rule> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int order) {
  const Rule& r = gauss_legendre(order);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
  return s * h;
}

namespace {

double adapt1(const std::function<double(double)>& f, double a, double b,
              double whole, double rel_tol, double abs_tol, double* err,
              int order, int depth, int forced) {
  const double mid = 0.5 * (a + b);
  const double left = integrate(f, a, mid, order);
  const double right = integrate(f, mid, b, order);
  const double delta = left + right - whole;
  if (depth <= 0 ||
      (forced <= 0 &&
       std::abs(delta) <= abs_tol + rel_tol * std::abs(left + right))) {
    if (err) *err += std::abs(delta);
    return left + right;
  }
  return adapt1(f, a, mid, left, rel_tol, abs_tol / 2, err, order, depth - 1,
                forced - 1) +
         adapt1(f, mid, b, right, rel_tol, abs_tol / 2, err, order, depth - 1,
                forced - 1);
}

double adapt2(const std::function<double(double, double)>& f, double a0,
              double a1, double b0, double b1, double whole, double rel_tol,
              double abs_tol, double* err, int order, int depth, int forced) {
  double l, r;
  if (a1 - a0 >= b1 - b0) {
    const double m = 0.5 * (a0 + a1);
    l = integrate2d(f, a0, m, b0, b1, order);
    r = integrate2d(f, m, a1, b0, b1, order);
    const double delta = l + r - whole;
    if (depth <= 0 ||
        (forced <= 0 && std::abs(delta) <= abs_tol + rel_tol * std::abs(l + r))) {
      if (err) *err += std::abs(delta);
      return l + r;
    }
    return adapt2(f, a0, m, b0, b1, l, rel_tol, abs_tol / 2, err, order,
                  depth - 1, forced - 1) +
           adapt2(f, m, a1, b0, b1, r, rel_tol, abs_tol / 2, err, order,
                  depth - 1, forced - 1);
  }
  const double m = 0.5 * (b0 + b1);
  l = integrate2d(f, a0, a1, b0, m, order);
  r = integrate2d(f, a0, a1, m, b1, order);
  const double delta = l + r - whole;
  if (depth <= 0 ||
      (forced <= 0 && std::abs(delta) <= abs_tol + rel_tol * std::abs(l + r))) {
    if (err) *err += std::abs(delta);
    return l + r;
  }
  return adapt2(f, a0, a1, b0, m, l, rel_tol, abs_tol / 2, err, order,
                depth - 1, forced - 1) +
         adapt2(f, a0, a1, m, b1, r, rel_tol, abs_tol / 2, err, order,
                depth - 1, forced - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol, double* err,
                          int order, int max_depth) {
  if (err) *err = 0.0;
  if (a == b) return 0.0;
  // Two forced refinement levels guard against narrow features that the
  // first parent/child comparison cannot see.
  return adapt1(f, a, b, integrate(f, a, b, order), rel_tol, abs_tol, err,
                order, max_depth, 2);
}

double integrate2d(const std::function<double(double, double)>& f, double a0,
                   double a1, double b0, double b1, int order) {
  const Rule& r = gauss_legendre(order);
  const double ca = 0.5 * (a0 + a1), ha = 0.5 * (a1 - a0);
  const double cb = 0.5 * (b0 + b1), hb = 0.5 * (b1 - b0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double x = ca + ha * r.x[i];
    double row = 0.0;
    for (std::size_t j = 0; j < r.x.size(); ++j)
      row += r.w[j] * f(x, cb + hb * r.x[j]);
    s += r.w[i] * row;
  }
  return s * ha * hb;
}

double integrate2d_adaptive(const std::function<double(double, double)>& f,
                            double a0, double a1, double b0, double b1,
                            double rel_tol, double abs_tol, double* err,
                            int order, int max_depth) {
  if (err) *err = 0.0;
  if (a0 == a1 || b0 == b1) return 0.0;
  return adapt2(f, a0, a1, b0, b1, integrate2d(f, a0, a1, b0, b1, order),
                rel_tol, abs_tol, err, order, max_depth, 2);
}

}  // namespace conelab::quad
