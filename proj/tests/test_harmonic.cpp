#include <doctest.h>

#include <cmath>

#include "conelab/harmonic.hpp"
#include "conelab/rng.hpp"

using namespace conelab;
using harmonic::FourierSineSeries;
using harmonic::SectorProfile;

namespace {

constexpr double kTMax = 10.0 * M_PI / 11.0;

// Band-limited random profile: a few sine modes with decaying random
// coefficients, rescaled to the requested discrete Lipschitz constant.
SectorProfile random_profile(std::uint64_t seed, double T, std::size_t codim,
                             double eta, std::size_t M = 4096,
                             std::size_t kmax = 16) {
  Rng rng(seed);
  std::vector<std::vector<double>> coeff(kmax, std::vector<double>(codim));
  for (std::size_t k = 0; k < kmax; ++k)
    for (std::size_t d = 0; d < codim; ++d)
      coeff[k][d] = rng.normal() / double((k + 1) * (k + 1));
  std::vector<std::vector<double>> v(M + 1, std::vector<double>(codim, 0.0));
  for (std::size_t i = 0; i <= M; ++i)
    for (std::size_t k = 0; k < kmax; ++k) {
      const double s = std::sin(M_PI * double(k + 1) * double(i) / double(M));
      for (std::size_t d = 0; d < codim; ++d) v[i][d] += coeff[k][d] * s;
    }
  // Scale to the target Lipschitz constant.
  double lip = 0.0;
  const double h = T / double(M);
  for (std::size_t i = 0; i < M; ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d < codim; ++d) {
      const double diff = v[i + 1][d] - v[i][d];
      s += diff * diff;
    }
    lip = std::max(lip, std::sqrt(s) / h);
  }
  const double scale = 0.9 * eta / lip;
  for (auto& row : v)
    for (auto& x : row) x *= scale;
  for (auto& x : v.front()) x = 0.0;
  for (auto& x : v.back()) x = 0.0;
  return SectorProfile(T, std::move(v), eta);
}

FourierSineSeries single_mode(double T, std::size_t k, double amp) {
  FourierSineSeries s;
  s.T = T;
  s.codim = 1;
  s.beta.assign(k, std::vector<double>(1, 0.0));
  s.beta[k - 1][0] = amp;
  return s;
}

std::vector<std::vector<double>> grid_fn(double T, std::size_t M,
                                         double (*fn)(double, double)) {
  std::vector<std::vector<double>> f(M + 1, std::vector<double>(1));
  for (std::size_t i = 0; i <= M; ++i) f[i][0] = fn(T, T * double(i) / double(M));
  return f;
}

}  // namespace

TEST_CASE("boundary function: pointwise formula and Lipschitz doubling") {
  std::vector<std::vector<double>> zero(65, std::vector<double>(1, 0.0));
  const SectorProfile pz(1.5, zero, 0.05);
  for (const auto& f : harmonic::boundary_function(pz)) CHECK(f[0] == 0.0);

  const auto p = random_profile(3, 2.0, 1, 0.05);
  const auto f = harmonic::boundary_function(p);
  for (std::size_t i = 0; i < p.v.size(); i += 97) {
    const double w = std::sqrt(1.0 - p.v[i][0] * p.v[i][0]);
    CHECK(f[i][0] == doctest::Approx(p.v[i][0] / w).epsilon(1e-14));
  }
  // f is 2 ||v'||-Lipschitz for small v.
  double flip = 0.0;
  const double h = p.dt();
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    flip = std::max(flip, std::abs(f[i + 1][0] - f[i][0]) / h);
  CHECK(flip <= 2.0 * p.discrete_lipschitz());
}

TEST_CASE("sine expansion recovers pure modes") {
  const double T = 2.2;
  const std::size_t M = 512;
  auto f1 = grid_fn(T, M, [](double T_, double t) { return std::sin(M_PI * t / T_); });
  const auto s1 = harmonic::sine_expand(f1, T, 16);
  CHECK(s1.beta[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k = 2; k <= 16; ++k)
    CHECK(std::abs(s1.beta[k - 1][0]) < 1e-10);

  auto f2 = grid_fn(T, M, [](double T_, double t) {
    return std::sin(2 * M_PI * t / T_) + 0.3 * std::sin(5 * M_PI * t / T_);
  });
  const auto s2 = harmonic::sine_expand(f2, T, 16);
  CHECK(s2.beta[1][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s2.beta[4][0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(s2.beta[0][0]) < 1e-10);
  CHECK(s2.reconstruction_error < 1e-10);

  CHECK_THROWS_WITH(harmonic::sine_expand(f1, T, M), doctest::Contains("Nyquist"));
}

TEST_CASE("Parseval residual below 1e-6 at default resolution") {
  Rng seeds(100);
  for (int i = 0; i < 10; ++i) {
    const double T = 1.0 + (kTMax - 1.0) * seeds.uniform();
    const auto p = random_profile(seeds.next(), T, 1 + seeds.index(2), 0.05);
    const auto s = harmonic::sine_expand(harmonic::boundary_function(p), p.T, 512);
    CHECK(s.parseval_residual < 1e-6);
  }
}

TEST_CASE("cone energy: closed form equals quadrature; frozen single-mode value") {
  // f = sin(pi t / T) with T = pi/2: (T/4)(1 + (pi/T)^2) = 5 pi / 8.
  const auto s = single_mode(M_PI / 2, 1, 1.0);
  CHECK(harmonic::cone_energy(s) == doctest::Approx(5 * M_PI / 8).epsilon(1e-14));
  double err = 0.0;
  CHECK(harmonic::cone_energy_quadrature(s, &err) ==
        doctest::Approx(5 * M_PI / 8).epsilon(1e-10));

  std::vector<std::vector<double>> zero(65, std::vector<double>(1, 0.0));
  CHECK(harmonic::cone_energy(SectorProfile(1.0, zero, 0.05)) == 0.0);
}

TEST_CASE("energy sandwich (8.18) on random profiles") {
  Rng seeds(200);
  for (int i = 0; i < 100; ++i) {
    const double T = 1.0 + (kTMax - 1.0) * seeds.uniform();
    const auto p = random_profile(seeds.next(), T, 1 + seeds.index(2), 0.05);
    const auto f = harmonic::boundary_function(p);
    const auto s = harmonic::sine_expand(f, p.T, 512);
    double fprime = 0.0;
    const double h = p.dt();
    for (std::size_t j = 0; j + 1 < f.size(); ++j) {
      double q = 0.0;
      for (std::size_t d = 0; d < p.codim; ++d) {
        const double diff = f[j + 1][d] - f[j][d];
        q += diff * diff;
      }
      fprime += q / h;
    }
    const double energy = harmonic::cone_energy(s);
    CHECK(energy >= 0.5 * fprime * (1.0 - 1e-9));
    CHECK(energy <= fprime * (1.0 + 1e-6) + 1e-12);
  }
}

TEST_CASE("harmonic contraction: 220/221 at the maximal aperture") {
  const auto s = single_mode(kTMax, 1, 1.0);
  const double ratio = harmonic::harmonic_energy(s) / harmonic::cone_energy(s);
  CHECK(ratio == doctest::Approx(220.0 / 221.0).epsilon(1e-12));

  // General mode/aperture: the ratio is 2 lambda / (1 + lambda^2) with
  // lambda = k pi / T; quadrature cross-check on the harmonic side.
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const std::size_t k = 1 + rng.index(6);
    const double T = 1.0 + (kTMax - 1.0) * rng.uniform();
    const auto m = single_mode(T, k, 0.7);
    const double lam = M_PI * double(k) / T;
    const double expect = 2.0 * lam / (1.0 + lam * lam);
    CHECK(harmonic::harmonic_energy(m) / harmonic::cone_energy(m) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect <= 1.0);
    double err = 0.0;
    const double hq = harmonic::harmonic_energy_quadrature(m, &err);
    CHECK(std::abs(hq - harmonic::harmonic_energy(m)) <=
          1e-8 * harmonic::harmonic_energy(m) + 2 * err);
  }

  FourierSineSeries empty;
  empty.T = 1.0;
  empty.codim = 1;
  CHECK(harmonic::harmonic_energy(empty) == 0.0);
}

TEST_CASE("replacement graph: zero profile, scaling law, boundary zeros") {
  std::vector<std::vector<double>> zero(65, std::vector<double>(1, 0.0));
  const SectorProfile pz(1.2, zero, 0.05);
  const auto gz = harmonic::build_replacement(pz, 0.01, 16);
  double out[1];
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    gz.value(rng.uniform(), rng.uniform(0.0, 1.2), out);
    CHECK(out[0] == 0.0);
  }

  // Pure-mode boundary function: choose v = f / sqrt(1 + f^2) so that
  // f = v / w is exactly amp sin(pi t / T); in the pure middle zone
  // G = 0.9 (rho/0.9)^{pi/T} f(t) per the scaling law.
  const double T = 1.8;
  const std::size_t M = 1024;
  const double amp = 0.02;
  std::vector<std::vector<double>> v(M + 1, std::vector<double>(1));
  for (std::size_t i = 0; i <= M; ++i) {
    const double f = amp * std::sin(M_PI * double(i) / double(M));
    v[i][0] = f / std::sqrt(1.0 + f * f);
  }
  v.front()[0] = v.back()[0] = 0.0;
  const SectorProfile p1(T, v, 0.05);
  const auto g = harmonic::build_replacement(p1, 0.01, 64);
  const double beta1 = g.series().beta[0][0];
  CHECK(beta1 == doctest::Approx(amp).epsilon(1e-12));
  for (double rho : {0.05, 0.2, 0.5, 0.8}) {
    for (double t : {0.3, 0.9, 1.5}) {
      g.value(rho, t, out);
      const double expect =
          0.9 * beta1 * std::pow(rho / 0.9, M_PI / T) * std::sin(M_PI * t / T);
      CHECK(out[0] == doctest::Approx(expect).epsilon(1e-9).scale(amp));
    }
  }
  CHECK(g.continuity_defect() < 1e-9);
  CHECK(g.boundary_defect() < 1e-12);
  CHECK(g.lipschitz_estimate() <= 100 * 0.05);
  CHECK_THROWS(harmonic::build_replacement(p1, 0.4, 64));
}

TEST_CASE("replacement gradient matches central finite differences") {
  const auto p = random_profile(77, 2.0, 2, 0.05);
  const auto g = harmonic::build_replacement(p, 0.01, 64);
  Rng rng(13);
  std::vector<double> v1(2), v2(2), a(2), b(2);
  for (int trial = 0; trial < 40; ++trial) {
    // Stay inside one zone: sample away from the seams.
    const double rho = rng.uniform(0.12, 0.85);
    const double t = rng.uniform(0.2, 1.8);
    g.gradient(rho, t, v1.data(), v2.data());
    const double h = 1e-6;
    const double x = rho * std::cos(t), y = rho * std::sin(t);
    auto eval = [&](double xx, double yy, double* out2) {
      g.value(std::hypot(xx, yy), std::atan2(yy, xx), out2);
    };
    eval(x + h, y, a.data());
    eval(x - h, y, b.data());
    for (int d = 0; d < 2; ++d)
      CHECK((a[d] - b[d]) / (2 * h) == doctest::Approx(v1[d]).epsilon(1e-5).scale(0.05));
    eval(x, y + h, a.data());
    eval(x, y - h, b.data());
    for (int d = 0; d < 2; ++d)
      CHECK((a[d] - b[d]) / (2 * h) == doctest::Approx(v2[d]).epsilon(1e-5).scale(0.05));
  }
}

TEST_CASE("graph areas: flat sector, homogeneity, second-order expansion") {
  std::vector<std::vector<double>> zero(65, std::vector<double>(1, 0.0));
  const SectorProfile pz(1.4, zero, 0.05);
  const auto gz = harmonic::build_replacement(pz, 0.01, 16);
  const auto flat = harmonic::graph_area(gz, 0.0, 1.0);
  CHECK(flat.value == doctest::Approx(1.4 / 2).epsilon(1e-12));

  // Homogeneity of the cone graph: area over B(0,rho) scales like rho^2.
  const auto s = single_mode(1.8, 2, 0.03);
  const auto full = harmonic::cone_graph_area(s, 0.0, 1.0);
  const auto half = harmonic::cone_graph_area(s, 0.0, 0.5);
  CHECK(half.value == doctest::Approx(0.25 * full.value).epsilon(1e-12));

  // Small amplitude a: area = T/2 + (1/2) a^2 (cone energy coefficient)
  // + O(a^4).
  const double T = 1.8;
  for (double a : {0.01, 0.02}) {
    const auto sa = single_mode(T, 1, a);
    const auto area = harmonic::cone_graph_area(sa, 0.0, 1.0);
    const double predicted = T / 2 + 0.5 * harmonic::cone_energy(sa);
    CHECK(std::abs(area.value - predicted) <= 5.0 * a * a * a * a + area.error);
  }

  const auto p = random_profile(5, 2.4, 1, 0.05);
  const auto g = harmonic::build_replacement(p, 0.01, 64);
  const auto fine = harmonic::graph_area(g, 0.0, 0.9);
  CHECK(fine.error < 1e-8);
}

TEST_CASE("area saving: zero profile, single mode, annulus/collar budgets") {
  std::vector<std::vector<double>> zero(129, std::vector<double>(1, 0.0));
  const SectorProfile pz(1.0, zero, 0.05);
  const auto rz = harmonic::area_saving(pz, 0.01, 32);
  CHECK(rz.saving == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(rz.lower_bound == 0.0);
  CHECK(rz.pass);

  // Single mode, amplitude 0.02, T = pi/2: int |v'|^2 = 4e-4 pi.
  const double T = M_PI / 2;
  const std::size_t M = 2048;
  std::vector<std::vector<double>> v(M + 1, std::vector<double>(1));
  for (std::size_t i = 0; i <= M; ++i)
    v[i][0] = 0.02 * std::sin(M_PI * double(i) / double(M));
  v.front()[0] = v.back()[0] = 0.0;
  const SectorProfile p1(T, v, 0.05);
  const auto r1 = harmonic::area_saving(p1, 0.01, 128);
  CHECK(r1.dirichlet_v == doctest::Approx(4e-4 * M_PI).epsilon(1e-5));
  CHECK(r1.saving >= 1e-4 * r1.dirichlet_v - r1.quad_error);
  CHECK(r1.saving >= 1e-4 * (r1.gamma_length - T) - r1.quad_error);
  CHECK(r1.pass);

  // Collar kappa^2 budget and the annulus interpolation energy (8.34).
  const auto g = harmonic::build_replacement(p1, 0.01, 128);
  double fprime2 = 0.0;
  for (std::size_t k = 1; k <= g.series().modes(); ++k) {
    const double lam = M_PI * double(k) / T;
    fprime2 += lam * lam * g.series().beta[k - 1][0] * g.series().beta[k - 1][0];
  }
  fprime2 *= T / 2.0;
  CHECK(r1.collar_energy <= 1e-4 * fprime2);
  const auto annulus = harmonic::dirichlet_energy(g, 0.9 * g.r_interp(), 0.9);
  CHECK(annulus.value / 0.81 <= 14.0 * (1.0 - g.r_interp()) * fprime2 * 1.01 + 1e-15);

  // eta ceiling enforced.
  CHECK_THROWS(harmonic::area_saving(random_profile(9, 2.0, 1, 0.08), 0.01, 64, 0.05));
}

TEST_CASE("length excess bound (8.54): length(Gamma) - T <= int |v'|^2") {
  Rng seeds(300);
  for (int i = 0; i < 100; ++i) {
    const double T = 1.0 + (kTMax - 1.0) * seeds.uniform();
    const auto p = random_profile(seeds.next(), T, 1 + seeds.index(2), 0.05);
    CHECK(p.gamma_length() - p.T <= p.dirichlet_v() + 1e-12);
    CHECK(p.gamma_length() >= p.T - 1e-12);
  }
}

TEST_CASE("profile csv round trip") {
  const auto p = random_profile(123, 1.7, 2, 0.05, 256);
  const auto text = harmonic::profile_to_csv(p);
  const auto q = harmonic::profile_from_csv(text, 0.05);
  REQUIRE(q.v.size() == p.v.size());
  CHECK(q.T == doctest::Approx(p.T).epsilon(1e-15));
  for (std::size_t i = 0; i < p.v.size(); i += 37)
    for (std::size_t d = 0; d < 2; ++d)
      CHECK(q.v[i][d] == p.v[i][d]);
}
