#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace conelab::decay {

// Gauge function h controlling almost-minimality: power form C0 r^b with
// b in (0,1], or logarithmic form C [log(A/r)]^{-b}.
struct GaugeSpec {
  enum class Kind { Power, Log };
  Kind kind = Kind::Power;
  double c0 = 0.0;  // C0 (power) or C (log)
  double b = 1.0;
  double A = 1.0;  // log form only

  static GaugeSpec power(double c0, double b);
  static GaugeSpec log_form(double c, double A, double b);
  static GaugeSpec zero() { return power(0.0, 1.0); }

  double operator()(double r) const;
};

// Dini integral h1(r) = int_0^r h(2t) dt/t: closed form for the power kind,
// adaptive quadrature (with convergence check) for the log kind. The log
// kind requires b > 1, else the integral diverges.
double gauge_h1(const GaugeSpec& g, double r);

struct DensityProfile {
  std::vector<double> r;      // strictly increasing, positive
  std::vector<double> theta;  // theta(r) >= 0
  double d0 = 0.0;            // limit density d(x)

  double f(std::size_t i) const { return theta[i] - d0; }
};

// Tabulates theta on a grid and validates that v(r) = r^2 theta(r) is
// nondecreasing (rejects models violating it).
DensityProfile synthesize_profile(const std::function<double(double)>& theta,
                                  const std::vector<double>& grid, double d0);

struct MonotonicityReport {
  bool pass = true;
  std::optional<std::size_t> first_violation;  // index into the profile
  double worst_drop = 0.0;                     // largest decrease observed
  bool upper_bound_pass = true;   // f(r) <= f(s) + C h1(s) for r < s
  bool lower_bound_pass = true;   // f(s) >= -C h1(s)
  double upper_worst = 0.0;
  double lower_worst = 0.0;
};

// Checks that theta(r) e^{lambda h1(r)} is nondecreasing across the samples
// (within 1e-10) and the derived excess bounds with the supplied constant C.
MonotonicityReport check_near_monotonicity(const DensityProfile& p,
                                           const GaugeSpec& g, double lambda,
                                           double C = 1.0);

// a = 4 alpha / (1 - 2 alpha).
double alpha_to_a(double alpha);

// Decay of the density excess: (x/y)^a f(y) + 24 x^a int_x^y r^{-a-1} h(2r) dr,
// closed form for power gauges, quadrature for log gauges.
double decay_bound(double f_y, double a, const GaugeSpec& g, double x, double y);

struct LogDecayBound {
  double value = 0.0;
  double base_term = 0.0;  // (x/y)^a f(y)
  double log_term = 0.0;   // c_log [log(A/2x)]^{-b}
  double pow_term = 0.0;   // c_pow (2x/A)^{a/2}
  double c_log = 0.0;
  double c_pow = 0.0;
};

// The split-domain bound for log gauges h(r) <= C [log(A/r)]^{-b} with
// explicit constants; requires x < y < A/3.
LogDecayBound log_gauge_decay(double f_y, double a, double C, double A,
                              double b, double x, double y);

struct WeakEnvelope {
  double value = 0.0;  // C1 [log(2y/x)]^{-1/(N-1)}
  double c1 = 0.0;
  double ode_fx = 0.0;    // numerically integrated worst-case solution at x
  bool dominated = true;  // ode_fx <= value
};

// Envelope for the degenerate differential inequality
// r f'(r) >= 2 alpha f_+^N - C h(2r) with the y-normalized log gauge
// h(2r) = C [log(2y/r)]^{-N/(N-1)}; certifies by integrating the equality
// ODE backward from (y, f_y) with adaptive RK4 and comparing at x.
WeakEnvelope weak_decay_envelope(double f_y, double alpha, double N, double y,
                                 double x, double C_h, bool certify = true);

// Profile I/O: CSV rows "r,theta".
DensityProfile profile_from_csv(const std::string& text, double d0);
std::string profile_to_csv(const DensityProfile& p);

}  // namespace conelab::decay
