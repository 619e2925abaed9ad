#include "conelab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "conelab/quadrature.hpp"

namespace conelab::decay {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

GaugeSpec GaugeSpec::power(double c0, double b) {
  if (c0 < 0.0) throw std::invalid_argument("gauge: C0 must be nonnegative");
  if (!(b > 0.0) || b > 1.0)
    throw std::invalid_argument("gauge: power exponent must lie in (0,1]");
  GaugeSpec g;
  g.kind = Kind::Power;
  g.c0 = c0;
  g.b = b;
  return g;
}

GaugeSpec GaugeSpec::log_form(double c, double A, double b) {
  if (c < 0.0) throw std::invalid_argument("gauge: C must be nonnegative");
  if (!(A > 0.0) || !(b > 0.0))
    throw std::invalid_argument("gauge: log form needs A > 0 and b > 0");
  GaugeSpec g;
  g.kind = Kind::Log;
  g.c0 = c;
  g.A = A;
  g.b = b;
  return g;
}

double GaugeSpec::operator()(double r) const {
  if (r <= 0.0) return 0.0;
  if (kind == Kind::Power) return c0 * std::pow(r, b);
  if (r >= A) throw std::invalid_argument("gauge: log form defined for r < A");
  return c0 * std::pow(std::log(A / r), -b);
}

double gauge_h1(const GaugeSpec& g, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("gauge_h1: r must be positive");
  if (g.kind == GaugeSpec::Kind::Power)
    return g.c0 * std::pow(2.0, g.b) * std::pow(r, g.b) / g.b;
  if (g.b <= 1.0)
    throw std::invalid_argument("gauge_h1: Dini condition fails for log gauge with b <= 1");
  if (2.0 * r >= g.A)
    throw std::invalid_argument("gauge_h1: need 2r < A for the log gauge");
  if (g.c0 == 0.0) return 0.0;
  // Substitute t = r e^{-s}: integral of h(2 r e^{-s}) over s in [0, inf);
  // the integrand is c0 (u0 + s)^{-b} with u0 = log(A/2r). Truncate where
  // the closed-form tail drops below the tolerance.
  const double u0 = std::log(g.A / (2.0 * r));
  const double tol = 1e-12;
  double S = 1.0;
  auto tail = [&](double s) {
    return g.c0 * std::pow(u0 + s, 1.0 - g.b) / (g.b - 1.0);
  };
  while (tail(S) > tol && S < 1e8) S *= 2.0;
  double err = 0.0;
  const double body = quad::integrate_adaptive(
      [&](double s) { return g.c0 * std::pow(u0 + s, -g.b); }, 0.0, S, 1e-12,
      1e-14, &err);
  return body + tail(S);
}

DensityProfile synthesize_profile(const std::function<double(double)>& theta,
                                  const std::vector<double>& grid, double d0) {
  if (grid.size() < 2) throw std::invalid_argument("synthesize_profile: need a grid");
  DensityProfile p;
  p.d0 = d0;
  double prev_r = 0.0, prev_v = 0.0;
  for (double r : grid) {
    if (!(r > prev_r))
      throw std::invalid_argument("synthesize_profile: grid must be positive and increasing");
    const double th = theta(r);
    if (th < 0.0) throw std::invalid_argument("synthesize_profile: negative density");
    const double v = r * r * th;
    if (v < prev_v - 1e-12)
      throw std::invalid_argument("synthesize_profile: r^2 theta(r) must be nondecreasing");
    p.r.push_back(r);
    p.theta.push_back(th);
    prev_r = r;
    prev_v = v;
  }
  return p;
}

MonotonicityReport check_near_monotonicity(const DensityProfile& p,
                                           const GaugeSpec& g, double lambda,
                                           double C) {
  if (p.r.size() < 2)
    throw std::invalid_argument("check_near_monotonicity: profile too short");
  MonotonicityReport rep;
  std::vector<double> h1(p.r.size());
  for (std::size_t i = 0; i < p.r.size(); ++i) h1[i] = gauge_h1(g, p.r[i]);
  double prev = p.theta[0] * std::exp(lambda * h1[0]);
  for (std::size_t i = 1; i < p.r.size(); ++i) {
    const double cur = p.theta[i] * std::exp(lambda * h1[i]);
    if (cur < prev - 1e-10) {
      rep.pass = false;
      if (!rep.first_violation) rep.first_violation = i;
      rep.worst_drop = std::max(rep.worst_drop, prev - cur);
    }
    prev = cur;
  }
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    for (std::size_t j = i + 1; j < p.r.size(); ++j) {
      const double excess = p.f(i) - p.f(j) - C * h1[j];
      if (excess > 1e-10) {
        rep.upper_bound_pass = false;
        rep.upper_worst = std::max(rep.upper_worst, excess);
      }
    }
    const double low = -C * h1[i] - p.f(i);
    if (low > 1e-10) {
      rep.lower_bound_pass = false;
      rep.lower_worst = std::max(rep.lower_worst, low);
    }
  }
  return rep;
}

double alpha_to_a(double alpha) {
  if (!(alpha > 0.0) || alpha >= 0.5)
    throw std::invalid_argument("alpha_to_a: alpha must lie in (0, 1/2)");
  return 4.0 * alpha / (1.0 - 2.0 * alpha);
}

namespace {

// int_x^y r^{-a-1} h(2r) dr.
double decay_integral(const GaugeSpec& g, double a, double x, double y) {
  if (g.c0 == 0.0) return 0.0;
  if (g.kind == GaugeSpec::Kind::Power) {
    const double c = g.c0 * std::pow(2.0, g.b);
    if (std::abs(a - g.b) < 1e-14) return c * std::log(y / x);
    return c * (std::pow(x, g.b - a) - std::pow(y, g.b - a)) / (a - g.b);
  }
  double err = 0.0;
  return quad::integrate_adaptive(
      [&](double r) { return std::pow(r, -a - 1.0) * g(2.0 * r); }, x, y, 1e-12,
      1e-300, &err, 16, 48);
}

}  // namespace

double decay_bound(double f_y, double a, const GaugeSpec& g, double x,
                   double y) {
  if (!(a > 0.0)) throw std::invalid_argument("decay_bound: a must be positive");
  if (!(0.0 < x && x < y)) throw std::invalid_argument("decay_bound: need 0 < x < y");
  return std::pow(x / y, a) * f_y + 24.0 * std::pow(x, a) * decay_integral(g, a, x, y);
}

LogDecayBound log_gauge_decay(double f_y, double a, double C, double A,
                              double b, double x, double y) {
  if (!(a > 0.0)) throw std::invalid_argument("log_gauge_decay: a must be positive");
  if (!(0.0 < x && x < y && y < A / 3.0))
    throw std::invalid_argument("log_gauge_decay: need 0 < x < y < A/3");
  if (!(b > 0.0)) throw std::invalid_argument("log_gauge_decay: b must be positive");
  LogDecayBound r;
  r.base_term = std::pow(x / y, a) * f_y;
  // Split the decay integral where log(A/2r) crosses half of log(A/2x):
  // the near region carries [log(A/2x)/2]^{-b}, the far region the x^{a/2}
  // power (r >= sqrt(Ax/2) there).
  r.c_log = 24.0 * C * std::pow(2.0, b) / a;
  r.c_pow = 24.0 * C * std::pow(std::log(A / (2.0 * y)), -b) / a;
  r.log_term = r.c_log * std::pow(std::log(A / (2.0 * x)), -b);
  r.pow_term = r.c_pow * std::pow(2.0 * x / A, a / 2.0);
  r.value = r.base_term + r.log_term + r.pow_term;
  return r;
}

WeakEnvelope weak_decay_envelope(double f_y, double alpha, double N, double y,
                                 double x, double C_h, bool certify) {
  if (!(N > 1.0)) throw std::invalid_argument("weak_decay_envelope: N must exceed 1");
  if (!(alpha > 0.0) || alpha >= 0.5)
    throw std::invalid_argument("weak_decay_envelope: alpha must lie in (0, 1/2)");
  if (!(0.0 < x && x < y)) throw std::invalid_argument("weak_decay_envelope: need 0 < x < y");
  if (C_h < 0.0) throw std::invalid_argument("weak_decay_envelope: C_h must be nonnegative");

  WeakEnvelope env;
  // C1 large enough that (i) phi(y) > f(y) and (ii) the contact-point
  // contradiction holds: 2 alpha C1^N > C1/(N-1) + C. The latter is solved
  // by a few rounds of C1 <- [(C1/(N-1) + C)/alpha]^{1/N} (a contraction at
  // large C1 since N > 1).
  const double margin = 1.05;
  double c1 = std::max({1.0, std::pow(1.0 / (alpha * (N - 1.0)), 1.0 / (N - 1.0)),
                        std::pow(C_h / alpha, 1.0 / N)});
  for (int it = 0; it < 60; ++it)
    c1 = std::max(c1, std::pow((c1 / (N - 1.0) + C_h) / alpha, 1.0 / N));
  if (f_y > 0.0) c1 = std::max(c1, f_y * std::pow(std::log(2.0), 1.0 / (N - 1.0)));
  env.c1 = margin * std::max(c1, 1e-12);
  const double expo = -1.0 / (N - 1.0);
  env.value = env.c1 * std::pow(std::log(2.0 * y / x), expo);

  if (certify) {
    // Integrate r f' = 2 alpha f_+^N - C h(2r) backward from (y, f_y) in
    // s = log r with classical RK4 and step halving to tolerance 1e-9.
    auto rhs = [&](double s, double f) {
      const double plus = std::max(f, 0.0);
      const double gauge = C_h * std::pow(std::log(2.0 * y) - s, -N / (N - 1.0));
      return 2.0 * alpha * std::pow(plus, N) - gauge;
    };
    auto integrate = [&](std::size_t steps) {
      const double s1 = std::log(y), s0 = std::log(x);
      const double h = (s0 - s1) / double(steps);  // negative
      double s = s1, f = f_y;
      for (std::size_t i = 0; i < steps; ++i) {
        const double k1 = rhs(s, f);
        const double k2 = rhs(s + h / 2, f + h * k1 / 2);
        const double k3 = rhs(s + h / 2, f + h * k2 / 2);
        const double k4 = rhs(s + h, f + h * k3);
        f += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
        s += h;
      }
      return f;
    };
    std::size_t steps = 256;
    double prev = integrate(steps);
    for (int it = 0; it < 12; ++it) {
      steps *= 2;
      const double cur = integrate(steps);
      if (std::abs(cur - prev) < 1e-9 * std::max(1.0, std::abs(cur))) {
        prev = cur;
        break;
      }
      prev = cur;
    }
    env.ode_fx = prev;
    env.dominated = env.ode_fx <= env.value + 1e-12;
  }
  return env;
}

DensityProfile profile_from_csv(const std::string& text, double d0) {
  std::istringstream in(text);
  std::string line;
  DensityProfile p;
  p.d0 = d0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 2) throw std::invalid_argument("profile csv: rows must be r,theta");
    p.r.push_back(vals[0]);
    p.theta.push_back(vals[1]);
  }
  if (p.r.size() < 2) throw std::invalid_argument("profile csv: too few rows");
  for (std::size_t i = 0; i + 1 < p.r.size(); ++i)
    if (!(p.r[i] < p.r[i + 1]))
      throw std::invalid_argument("profile csv: radii must increase");
  if (!(p.r.front() > 0.0)) throw std::invalid_argument("profile csv: radii must be positive");
  return p;
}

std::string profile_to_csv(const DensityProfile& p) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.r.size(); ++i)
    out << g17(p.r[i]) << ',' << g17(p.theta[i]) << '\n';
  return out.str();
}

}  // namespace conelab::decay
