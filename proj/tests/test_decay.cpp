#include <doctest.h>

#include <cmath>

#include "conelab/decay.hpp"
#include "conelab/quadrature.hpp"
#include "conelab/rng.hpp"

using namespace conelab;
using decay::DensityProfile;
using decay::GaugeSpec;

namespace {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
  return g;
}

}  // namespace

TEST_CASE("gauge h1: closed power form, zero gauge, log antiderivative") {
  CHECK(decay::gauge_h1(GaugeSpec::power(1.0, 1.0), 0.5) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(decay::gauge_h1(GaugeSpec::power(0.0, 0.5), 0.3) == 0.0);
  // Power closed form vs quadrature after t = r e^{-s} (the substitution
  // tames the t^{b-1} endpoint; the plain integral is numerically hopeless
  // for small b).
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const double c0 = rng.uniform(0.1, 2.0);
    const double b = rng.uniform(0.05, 1.0);
    const double r = rng.uniform(0.01, 0.9);
    const GaugeSpec g = GaugeSpec::power(c0, b);
    const double S = 40.0 / b;  // e^{-bS} tail below 4e-18
    double err = 0.0;
    const double byquad = quad::integrate_adaptive(
        [&](double s) { return g(2 * r * std::exp(-s)); }, 0.0, S, 1e-13,
        1e-15, &err);
    CHECK(decay::gauge_h1(g, r) == doctest::Approx(byquad).epsilon(1e-8));
  }
  // Log gauge: quadrature matches the closed antiderivative
  // C [log(A/2t)]^{1-b}/(b-1); at A=1, b=2, r=0.1 that is 1/log(5).
  const GaugeSpec lg = GaugeSpec::log_form(1.0, 1.0, 2.0);
  CHECK(decay::gauge_h1(lg, 0.1) ==
        doctest::Approx(1.0 / std::log(5.0)).epsilon(1e-8));
  CHECK_THROWS_WITH(decay::gauge_h1(GaugeSpec::log_form(1.0, 1.0, 1.0), 0.1),
                    doctest::Contains("Dini"));
}

TEST_CASE("profile synthesis validates r^2 theta monotonicity") {
  const auto grid = log_grid(1e-3, 1.0, 200);
  const auto flat = decay::synthesize_profile([](double) { return M_PI; }, grid, M_PI);
  CHECK(flat.theta.front() == M_PI);

  const auto rising = decay::synthesize_profile(
      [](double r) { return 1.5 * M_PI + std::pow(r, 0.3); }, grid, 1.5 * M_PI);
  CHECK(rising.theta.back() > rising.theta.front());

  // theta = pi - r: v = pi r^2 - r^3 increases up to 2pi/3 and not beyond.
  auto shrinking = [](double r) { return M_PI - r; };
  const auto ok = decay::synthesize_profile(shrinking, log_grid(1e-3, 2.0, 200), M_PI);
  CHECK(ok.r.back() == doctest::Approx(2.0));
  CHECK_THROWS(decay::synthesize_profile(shrinking, log_grid(1e-3, 2.5, 200), M_PI));
}

TEST_CASE("near-monotonicity checker: passes, dips, excess bounds") {
  const auto grid = log_grid(1e-3, 1.0, 300);
  const auto flat = decay::synthesize_profile([](double) { return M_PI; }, grid, M_PI);
  const auto rep = decay::check_near_monotonicity(flat, GaugeSpec::zero(), 1.0);
  CHECK(rep.pass);
  CHECK(rep.upper_bound_pass);
  CHECK(rep.lower_bound_pass);

  const auto rising = decay::synthesize_profile(
      [](double r) { return M_PI + std::pow(r, 0.4); }, grid, M_PI);
  CHECK(decay::check_near_monotonicity(rising, GaugeSpec::zero(), 1.0).pass);

  // A dip beyond the e^{lambda h1} allowance is flagged with its location.
  DensityProfile dipped = rising;
  const std::size_t where = 150;
  for (std::size_t i = where; i < dipped.theta.size(); ++i)
    dipped.theta[i] -= 0.05;
  const auto bad = decay::check_near_monotonicity(
      dipped, GaugeSpec::power(1e-4, 1.0), 1.0);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.first_violation.has_value());
  CHECK(*bad.first_violation == where);
  CHECK(bad.worst_drop > 0.04);
}

TEST_CASE("decay bound: gauge-free exactness and the power-law solution") {
  // h = 0: the bound is (x/y)^a f(y) and is exact on f(r) = K r^a.
  const double a = 0.7, K = 2.3, y = 0.8;
  for (double x : {0.01, 0.1, 0.5}) {
    const double bound = decay::decay_bound(K * std::pow(y, a), a,
                                            GaugeSpec::zero(), x, y);
    CHECK(bound == doctest::Approx(K * std::pow(x, a)).epsilon(1e-12));
  }
  // Semigroup under composition for pure power decay.
  const double fy = 0.37;
  const double z = 0.3, x = 0.05;
  const double two_step = decay::decay_bound(
      decay::decay_bound(fy, a, GaugeSpec::zero(), z, y), a, GaugeSpec::zero(), x, z);
  CHECK(two_step == doctest::Approx(decay::decay_bound(fy, a, GaugeSpec::zero(), x, y))
                        .epsilon(1e-14));
  // Decay: smaller x gives a smaller bound (h = 0, f_y >= 0).
  double prev = -1.0;
  for (double xx : {0.01, 0.05, 0.2, 0.6}) {
    const double b = decay::decay_bound(fy, a, GaugeSpec::zero(), xx, y);
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("decay bound with power gauges: closed form vs quadrature, 5.19") {
  Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    const double a = rng.uniform(0.15, 1.5);
    const double b = rng.uniform(0.05, std::min(1.0, a * 0.9));
    const double c0 = rng.uniform(0.1, 2.0);
    const double x = rng.uniform(0.01, 0.2), y = rng.uniform(0.4, 1.0);
    const GaugeSpec g = GaugeSpec::power(c0, b);
    const double fy = rng.uniform(0.0, 1.0);
    const double bound = decay::decay_bound(fy, a, g, x, y);
    double err = 0.0;
    const double integral = quad::integrate_adaptive(
        [&](double r) { return std::pow(r, -a - 1.0) * g(2 * r); }, x, y, 1e-12,
        1e-14, &err);
    const double byquad = std::pow(x / y, a) * fy + 24 * std::pow(x, a) * integral;
    CHECK(bound == doctest::Approx(byquad).epsilon(1e-10));
    // Example 5.19 form: bound <= (x/y)^a f(y) + 24 C 2^b (a-b)^{-1} x^b.
    const double e519 = std::pow(x / y, a) * fy +
                        24 * c0 * std::pow(2.0, b) / (a - b) * std::pow(x, b);
    CHECK(bound <= e519 * (1 + 1e-12));
  }
}

TEST_CASE("splitting bound (5.25) for nondecreasing gauges") {
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    const double a = rng.uniform(0.2, 1.2);
    const GaugeSpec g = GaugeSpec::power(rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0));
    const double x = rng.uniform(0.01, 0.2), y = rng.uniform(0.4, 1.0);
    const double z = x + (y - x) * rng.uniform();
    double err = 0.0;
    const double integral = quad::integrate_adaptive(
        [&](double r) { return std::pow(r, -a - 1.0) * g(2 * r); }, x, y, 1e-11,
        1e-13, &err);
    const double split = std::pow(x, -a) * g(2 * z) / a + std::pow(z, -a) * g(2 * y) / a;
    CHECK(integral <= split * (1 + 1e-10));
  }
}

TEST_CASE("log-gauge decay bound: limits and domination") {
  const double a = 0.8, y = 0.2, A = 1.0, b = 2.0;
  // C = 0: pure power decay.
  const auto zero = decay::log_gauge_decay(0.5, a, 0.0, A, b, 0.01, y);
  CHECK(zero.value == doctest::Approx(std::pow(0.01 / y, a) * 0.5).epsilon(1e-14));

  // x -> 0: the bound decays like [log(A/2x)]^{-b}.
  const double C = 1.0;
  double prev_scaled = -1.0;
  for (double x : {1e-2, 1e-4, 1e-8, 1e-16}) {
    const auto r = decay::log_gauge_decay(0.5, a, C, A, b, x, y);
    const double scaled = r.value * std::pow(std::log(A / (2 * x)), b);
    if (prev_scaled > 0.0) CHECK(scaled <= prev_scaled * 1.05);
    prev_scaled = scaled;
    CHECK(r.value > 0.0);
  }
  // The explicit split dominates the quadrature bound.
  Rng rng(29);
  for (int i = 0; i < 50; ++i) {
    const double aa = rng.uniform(0.2, 1.4);
    const double bb = rng.uniform(1.2, 3.0);
    const double AA = rng.uniform(0.5, 2.0);
    const double yy = rng.uniform(0.05, AA / 3.0 * 0.99);
    const double xx = yy * rng.uniform(0.01, 0.8);
    const double cc = rng.uniform(0.1, 1.5);
    const double fy = rng.uniform(0.0, 1.0);
    const auto split = decay::log_gauge_decay(fy, aa, cc, AA, bb, xx, yy);
    const double direct =
        decay::decay_bound(fy, aa, GaugeSpec::log_form(cc, AA, bb), xx, yy);
    CHECK(split.value >= direct * (1 - 1e-10));
  }
}

TEST_CASE("weak decay envelope: construction, ODE domination, 5.36 identity") {
  // Zero data, zero gauge: anything dominates.
  const auto z = decay::weak_decay_envelope(0.0, 0.25, 2.0, 1.0, 0.01, 0.0);
  CHECK(z.dominated);

  // N = 2, alpha = 1/4, h = 0: closed-form solution of the equality ODE.
  const double fy = 0.3, alpha = 0.25, y = 1.0;
  for (double x : {0.5, 0.1, 0.01}) {
    const auto env = decay::weak_decay_envelope(fy, alpha, 2.0, y, x, 0.0);
    const double exact = 1.0 / (1.0 / fy + 2 * alpha * std::log(y / x));
    CHECK(env.ode_fx == doctest::Approx(exact).epsilon(1e-7));
    CHECK(env.dominated);
    CHECK(env.value >= exact);
  }

  // (5.36): r phi' = C1^{1-N}/(N-1) phi^N for the envelope family.
  const double N = 2.7, C1 = 1.9;
  auto phi = [&](double r) {
    return C1 * std::pow(std::log(2 * y / r), -1.0 / (N - 1.0));
  };
  for (double r : {0.03, 0.2, 0.7}) {
    const double h = 1e-6 * r;
    const double lhs = r * (phi(r + h) - phi(r - h)) / (2 * h);
    const double rhs = std::pow(C1, 1.0 - N) / (N - 1.0) * std::pow(phi(r), N);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }

  // Gauged case: envelope still dominates the integrated inequality.
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const double Nv = rng.uniform(1.3, 3.0);
    const double al = rng.uniform(0.05, 0.45);
    const double fyv = rng.uniform(0.0, 0.5);
    const double ch = rng.uniform(0.0, 0.5);
    const double xv = rng.uniform(1e-4, 0.5);
    const auto env = decay::weak_decay_envelope(fyv, al, Nv, 1.0, xv, ch);
    CHECK(env.dominated);
  }
}

TEST_CASE("alpha conversion and parameter validation") {
  CHECK(decay::alpha_to_a(0.25) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(decay::alpha_to_a(0.1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS(decay::alpha_to_a(0.5));
  CHECK_THROWS(decay::decay_bound(0.1, -1.0, GaugeSpec::zero(), 0.1, 1.0));
  CHECK_THROWS(decay::weak_decay_envelope(0.1, 0.25, 0.9, 1.0, 0.1, 0.0));
}

TEST_CASE("density profile csv round trip") {
  const auto grid = log_grid(1e-2, 1.0, 64);
  const auto p = decay::synthesize_profile(
      [](double r) { return M_PI + 0.1 * std::sqrt(r); }, grid, M_PI);
  const auto text = decay::profile_to_csv(p);
  const auto q = decay::profile_from_csv(text, M_PI);
  REQUIRE(q.r.size() == p.r.size());
  for (std::size_t i = 0; i < p.r.size(); i += 7) {
    CHECK(q.r[i] == p.r[i]);
    CHECK(q.theta[i] == p.theta[i]);
  }
}
