#pragma once

#include <functional>
#include <vector>

namespace conelab::quad {

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by
// Newton iteration on the Legendre recurrence and cached.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

const Rule& gauss_legendre(int order);

double integrate(const std::function<double(double)>& f, double a, double b,
                 int order = 24);

// Adaptive bisection with nested-rule error estimate; *err (optional)
// receives the accumulated estimate.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          double* err = nullptr, int order = 16,
                          int max_depth = 40);

// Tensor rule over [a0,a1] x [b0,b1].
double integrate2d(const std::function<double(double, double)>& f, double a0,
                   double a1, double b0, double b1, int order = 16);

// Panel-adaptive 2-D integration (splits the longer side); *err receives
// the refinement-based error estimate.
double integrate2d_adaptive(const std::function<double(double, double)>& f,
                            double a0, double a1, double b0, double b1,
                            double rel_tol, double abs_tol,
                            double* err = nullptr, int order = 12,
                            int max_depth = 24);

}  // namespace conelab::quad
