#include "conelab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace conelab::harmonic {

namespace {

constexpr double kTMax = 10.0 * M_PI / 11.0;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return s;
}

}  // namespace

SectorProfile::SectorProfile(double T_, std::vector<std::vector<double>> samples,
                             double eta_, double eta0)
    : T(T_), v(std::move(samples)), eta(eta_) {
  if (!(T > 0.0) || T > kTMax + 1e-15)
    throw std::invalid_argument("SectorProfile: aperture outside (0, 10pi/11]");
  if (T < 8.0 * eta0)
    throw std::invalid_argument("SectorProfile: aperture below 8*eta0");
  if (v.size() < 3) throw std::invalid_argument("SectorProfile: too few samples");
  codim = v.front().size();
  if (codim < 1) throw std::invalid_argument("SectorProfile: empty codomain");
  for (const auto& s : v)
    if (s.size() != codim)
      throw std::invalid_argument("SectorProfile: ragged samples");
  for (auto* end : {&v.front(), &v.back()}) {
    if (std::sqrt(norm2(*end)) > 1e-12)
      throw std::invalid_argument("SectorProfile: v must vanish at both ends");
    std::fill(end->begin(), end->end(), 0.0);
  }
  if (!(eta > 0.0) || eta > 0.1)
    throw std::invalid_argument("SectorProfile: eta outside (0, 0.1]");
  if (discrete_lipschitz() > eta * (1.0 + 1e-12))
    throw std::invalid_argument("SectorProfile: samples exceed the declared Lipschitz bound");
}

double SectorProfile::discrete_lipschitz() const {
  const double h = dt();
  double lip = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d < codim; ++d) {
      const double diff = v[i + 1][d] - v[i][d];
      s += diff * diff;
    }
    lip = std::max(lip, std::sqrt(s) / h);
  }
  return lip;
}

double SectorProfile::dirichlet_v() const {
  const double h = dt();
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d < codim; ++d) {
      const double diff = v[i + 1][d] - v[i][d];
      s += diff * diff;
    }
    e += s / h;
  }
  return e;
}

double SectorProfile::gamma_length() const {
  const double h = dt();
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double dv2 = 0.0, mid2 = 0.0;
    for (std::size_t d = 0; d < codim; ++d) {
      const double diff = v[i + 1][d] - v[i][d];
      dv2 += diff * diff;
      const double m = 0.5 * (v[i + 1][d] + v[i][d]);
      mid2 += m * m;
    }
    const double w2 = 1.0 - mid2;
    if (w2 <= 0.0) throw std::invalid_argument("gamma_length: |v| reaches 1");
    // w w' = -<v, v'> so w'^2 = <v,v'>^2 / w^2 <= |v|^2 |v'|^2 / w^2.
    double vdotdv = 0.0;
    for (std::size_t d = 0; d < codim; ++d)
      vdotdv += 0.5 * (v[i + 1][d] + v[i][d]) * (v[i + 1][d] - v[i][d]);
    const double wp2 = vdotdv * vdotdv / (w2 * h * h);
    len += std::sqrt(w2 + wp2 + dv2 / (h * h)) * h;
  }
  return len;
}

std::vector<std::vector<double>> boundary_function(const SectorProfile& p) {
  std::vector<std::vector<double>> f(p.v.size(), std::vector<double>(p.codim));
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    const double w2 = 1.0 - norm2(p.v[i]);
    if (w2 <= 0.0)
      throw std::invalid_argument("boundary_function: |v| reaches 1");
    const double w = std::sqrt(w2);
    for (std::size_t d = 0; d < p.codim; ++d) f[i][d] = p.v[i][d] / w;
  }
  return f;
}

FourierSineSeries sine_expand(const std::vector<std::vector<double>>& f,
                              double T, std::size_t K) {
  if (f.size() < 3) throw std::invalid_argument("sine_expand: too few samples");
  const std::size_t M = f.size() - 1;
  if (K < 1 || K > M - 1)
    throw std::invalid_argument("sine_expand: mode count exceeds the grid Nyquist");
  const std::size_t d = f.front().size();
  const double h = T / double(M);
  FourierSineSeries s;
  s.T = T;
  s.codim = d;
  s.beta.assign(K, std::vector<double>(d, 0.0));
  for (std::size_t k = 1; k <= K; ++k) {
    // Incremental rotation for sin(pi k t_i / T) at t_i = i h.
    const double step = M_PI * double(k) / double(M);
    const std::complex<double> rot(std::cos(step), std::sin(step));
    std::complex<double> z(1.0, 0.0);
    std::vector<double> acc(d, 0.0);
    for (std::size_t i = 1; i < M; ++i) {  // endpoints vanish
      z *= rot;
      const double sn = z.imag();
      for (std::size_t c = 0; c < d; ++c) acc[c] += f[i][c] * sn;
    }
    for (std::size_t c = 0; c < d; ++c) s.beta[k - 1][c] = acc[c] * 2.0 * h / T;
  }
  // Parseval residual: spectral derivative energy vs grid differences.
  double spectral = 0.0;
  for (std::size_t k = 1; k <= K; ++k)
    spectral += double(k) * double(k) * norm2(s.beta[k - 1]);
  spectral *= M_PI * M_PI / (2.0 * T);
  double discrete = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    double q = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double diff = f[i + 1][c] - f[i][c];
      q += diff * diff;
    }
    discrete += q / h;
  }
  s.parseval_residual = std::abs(spectral - discrete);
  // Reconstruction defect of the partial sum at the grid points.
  double worst = 0.0;
  for (std::size_t i = 0; i <= M; ++i) {
    std::vector<double> rec(d, 0.0);
    for (std::size_t k = 1; k <= K; ++k) {
      const double sn = std::sin(M_PI * double(k) * double(i) / double(M));
      for (std::size_t c = 0; c < d; ++c) rec[c] += s.beta[k - 1][c] * sn;
    }
    double q = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double diff = rec[c] - f[i][c];
      q += diff * diff;
    }
    worst = std::max(worst, std::sqrt(q));
  }
  s.reconstruction_error = worst;
  return s;
}

double cone_energy(const FourierSineSeries& s) {
  double e = 0.0;
  for (std::size_t k = 1; k <= s.modes(); ++k) {
    const double lam = M_PI * double(k) / s.T;
    e += (1.0 + lam * lam) * norm2(s.beta[k - 1]);
  }
  return e * s.T / 4.0;
}

double cone_energy(const SectorProfile& p, std::size_t K) {
  const std::size_t M = p.intervals();
  if (K == 0) K = std::min<std::size_t>(512, M - 1);
  return cone_energy(sine_expand(boundary_function(p), p.T, K));
}

double harmonic_energy(const FourierSineSeries& s) {
  double e = 0.0;
  for (std::size_t k = 1; k <= s.modes(); ++k)
    e += double(k) * norm2(s.beta[k - 1]);
  return e * M_PI / 2.0;
}

namespace {

// |grad G1|^2 at (rho, t), as sum over modes evaluated directly.
// T <= 10pi/11 keeps every exponent lam - 1 >= 1/10, so rho = 0 is regular.
double g1_grad_sq(const FourierSineSeries& s, double rho, double t) {
  const std::size_t d = s.codim;
  std::vector<double> dr(d, 0.0), dtan(d, 0.0);
  for (std::size_t k = 1; k <= s.modes(); ++k) {
    const double lam = M_PI * double(k) / s.T;
    const double pw = rho > 0.0 ? std::pow(rho, lam - 1.0) : 0.0;
    const double sn = std::sin(lam * t) * lam * pw;
    const double cs = std::cos(lam * t) * lam * pw;
    for (std::size_t c = 0; c < d; ++c) {
      dr[c] += s.beta[k - 1][c] * sn;
      dtan[c] += s.beta[k - 1][c] * cs;
    }
  }
  return norm2(dr) + norm2(dtan);
}

}  // namespace

double harmonic_energy_quadrature(const FourierSineSeries& s, double* err) {
  // Substitute rho = u^5: the fractional power rho^{2 pi/T - 2} of the
  // lowest mode is only C^0-ish at 0 and defeats plain panels.
  return quad::integrate2d_adaptive(
      [&](double u, double t) {
        const double rho = u * u * u * u * u;
        return g1_grad_sq(s, rho, t) * rho * 5.0 * u * u * u * u;
      },
      0.0, 1.0, 0.0, s.T, 1e-12, 1e-14, err, 20, 30);
}

double cone_energy_quadrature(const FourierSineSeries& s, double* err) {
  // F(rho, t) = rho f(t): |grad F|^2 = |f|^2 + |f'|^2, radially constant.
  const std::size_t d = s.codim;
  const double inner = quad::integrate_adaptive(
      [&](double t) {
        std::vector<double> f(d, 0.0), fp(d, 0.0);
        for (std::size_t k = 1; k <= s.modes(); ++k) {
          const double lam = M_PI * double(k) / s.T;
          for (std::size_t c = 0; c < d; ++c) {
            f[c] += s.beta[k - 1][c] * std::sin(lam * t);
            fp[c] += s.beta[k - 1][c] * lam * std::cos(lam * t);
          }
        }
        return norm2(f) + norm2(fp);
      },
      0.0, s.T, 1e-11, 1e-14, err, 24);
  if (err) *err *= 0.5;
  return 0.5 * inner;
}

ReplacementGraph::ReplacementGraph(const SectorProfile& p, double kappa,
                                   std::size_t modes)
    : kappa_(kappa), r_interp_(1.0 - 1e-6) {
  if (!(kappa > 0.0) || kappa > 0.01)
    throw std::invalid_argument("ReplacementGraph: kappa outside (0, 1e-2]");
  if (3.0 * kappa >= 0.9)
    throw std::invalid_argument("ReplacementGraph: collar overlaps the outer ring");
  const std::size_t M = p.intervals();
  if (modes == 0) modes = std::min<std::size_t>(512, M - 1);
  series_ = sine_expand(boundary_function(p), p.T, modes);

  // Diagnostics: continuity across the four interface circles, boundary
  // values on the two half-lines, Lipschitz estimate.
  const double eps = 1e-9;
  const std::size_t d = series_.codim;
  std::vector<double> a(d), b(d), v1(d), v2(d);
  const double circles[4] = {0.9, 0.9 * r_interp_, 3.0 * kappa_, 2.0 * kappa_};
  for (double rc : circles) {
    for (int i = 0; i <= 64; ++i) {
      const double t = series_.T * double(i) / 64.0;
      value(rc * (1.0 + eps), t, a.data());
      value(rc * (1.0 - eps), t, b.data());
      double q = 0.0;
      for (std::size_t c = 0; c < d; ++c) q += (a[c] - b[c]) * (a[c] - b[c]);
      continuity_defect_ = std::max(continuity_defect_, std::sqrt(q));
    }
  }
  for (int i = 0; i <= 64; ++i) {
    const double rho = double(i) / 64.0;
    for (double t : {0.0, series_.T}) {
      value(rho, t, a.data());
      boundary_defect_ = std::max(boundary_defect_, std::sqrt(norm2(a)));
    }
  }
  for (int i = 1; i <= 80; ++i) {
    const double rho = double(i) / 80.0;
    for (int j = 0; j <= 80; ++j) {
      const double t = series_.T * double(j) / 80.0;
      gradient(rho, t, v1.data(), v2.data());
      lipschitz_ = std::max(lipschitz_, std::sqrt(norm2(v1) + norm2(v2)));
    }
  }
}

void ReplacementGraph::g1_eval(double rho, double t, double* val, double* d_rho,
                               double* d_tan) const {
  const std::size_t d = series_.codim;
  for (std::size_t c = 0; c < d; ++c) {
    if (val) val[c] = 0.0;
    if (d_rho) d_rho[c] = 0.0;
    if (d_tan) d_tan[c] = 0.0;
  }
  for (std::size_t k = 1; k <= series_.modes(); ++k) {
    const double lam = M_PI * double(k) / series_.T;
    const double pw = rho > 0.0 ? std::pow(rho, lam) : 0.0;
    const double pw1 = rho > 0.0 ? std::pow(rho, lam - 1.0) : 0.0;
    const double sn = std::sin(lam * t);
    const double cs = std::cos(lam * t);
    for (std::size_t c = 0; c < d; ++c) {
      const double bc = series_.beta[k - 1][c];
      if (val) val[c] += bc * pw * sn;
      if (d_rho) d_rho[c] += bc * lam * pw1 * sn;
      if (d_tan) d_tan[c] += bc * lam * pw1 * cs;
    }
  }
}

void ReplacementGraph::value(double rho, double t, double* out) const {
  const std::size_t d = series_.codim;
  if (rho < 2.0 * kappa_) {
    std::fill(out, out + d, 0.0);
    return;
  }
  if (rho < 3.0 * kappa_) {
    g1_eval(10.0 * kappa_ / 3.0, t, out, nullptr, nullptr);
    const double w = 0.9 * (rho - 2.0 * kappa_) / kappa_;
    for (std::size_t c = 0; c < d; ++c) out[c] *= w;
    return;
  }
  if (rho < 0.9) {
    const double rp = rho / 0.9;
    if (rp <= r_interp_) {
      g1_eval(rp, t, out, nullptr, nullptr);
      for (std::size_t c = 0; c < d; ++c) out[c] *= 0.9;
      return;
    }
    std::vector<double> inner(d), outer(d);
    g1_eval(r_interp_, t, inner.data(), nullptr, nullptr);
    g1_eval(1.0, t, outer.data(), nullptr, nullptr);
    const double wl = (1.0 - rp) / (1.0 - r_interp_);
    const double wr = (rp - r_interp_) / (1.0 - r_interp_);
    for (std::size_t c = 0; c < d; ++c)
      out[c] = 0.9 * (wl * inner[c] + wr * outer[c]);
    return;
  }
  // Outer ring: the homogeneous cone graph itself.
  g1_eval(1.0, t, out, nullptr, nullptr);
  for (std::size_t c = 0; c < d; ++c) out[c] *= rho;
}

void ReplacementGraph::polar_gradient(double rho, double t, double* d_rho,
                                      double* d_tan) const {
  const std::size_t d = series_.codim;
  if (rho < 2.0 * kappa_) {
    std::fill(d_rho, d_rho + d, 0.0);
    std::fill(d_tan, d_tan + d, 0.0);
    return;
  }
  if (rho < 3.0 * kappa_) {
    // G = ((rho - 2 kappa)/kappa) h(t) with h(t) = 0.9 G1(10 kappa/3, t).
    const double rp = 10.0 * kappa_ / 3.0;
    std::vector<double> h(d), dtan(d);
    g1_eval(rp, t, h.data(), nullptr, dtan.data());
    for (std::size_t c = 0; c < d; ++c) {
      d_rho[c] = 0.9 * h[c] / kappa_;
      d_tan[c] = 0.9 * (rho - 2.0 * kappa_) / kappa_ * dtan[c] * rp / rho;
    }
    return;
  }
  if (rho < 0.9) {
    const double rp = rho / 0.9;
    if (rp <= r_interp_) {
      std::vector<double> dr(d), dtan(d);
      g1_eval(rp, t, nullptr, dr.data(), dtan.data());
      for (std::size_t c = 0; c < d; ++c) {
        d_rho[c] = dr[c];
        d_tan[c] = dtan[c];
      }
      return;
    }
    std::vector<double> in_v(d), in_dt(d), out_v(d), out_dt(d);
    g1_eval(r_interp_, t, in_v.data(), nullptr, in_dt.data());
    g1_eval(1.0, t, out_v.data(), nullptr, out_dt.data());
    const double wl = (1.0 - rp) / (1.0 - r_interp_);
    const double wr = (rp - r_interp_) / (1.0 - r_interp_);
    for (std::size_t c = 0; c < d; ++c) {
      d_rho[c] = (out_v[c] - in_v[c]) / (1.0 - r_interp_);
      // g1_eval returns arc-length tangential derivatives (1/rho') d_t G1;
      // undo that factor, interpolate, and rescale to radius rho.
      d_tan[c] = (wl * in_dt[c] * r_interp_ + wr * out_dt[c]) / rp;
    }
    return;
  }
  std::vector<double> f(d), fp(d);
  g1_eval(1.0, t, f.data(), nullptr, fp.data());
  for (std::size_t c = 0; c < d; ++c) {
    d_rho[c] = f[c];
    d_tan[c] = fp[c];
  }
}

void ReplacementGraph::gradient(double rho, double t, double* v1,
                                double* v2) const {
  const std::size_t d = series_.codim;
  std::vector<double> dr(d), dtan(d);
  polar_gradient(rho, t, dr.data(), dtan.data());
  const double c = std::cos(t), s = std::sin(t);
  for (std::size_t i = 0; i < d; ++i) {
    v1[i] = c * dr[i] - s * dtan[i];
    v2[i] = s * dr[i] + c * dtan[i];
  }
}

std::vector<double> ReplacementGraph::seams() const {
  return {2.0 * kappa_, 3.0 * kappa_, 0.9 * r_interp_, 0.9};
}

ReplacementGraph build_replacement(const SectorProfile& p, double kappa,
                                   std::size_t modes) {
  return ReplacementGraph(p, kappa, modes);
}

namespace {

double graph_jacobian(const std::vector<double>& v1,
                      const std::vector<double>& v2) {
  const double a = norm2(v1), b = norm2(v2);
  double ab = 0.0;
  for (std::size_t i = 0; i < v1.size(); ++i) ab += v1[i] * v2[i];
  return std::sqrt(std::max((1.0 + a) * (1.0 + b) - ab * ab, 0.0));
}

}  // namespace

AreaResult cone_graph_area(const FourierSineSeries& s, double r0, double r1) {
  if (!(0.0 <= r0 && r0 < r1))
    throw std::invalid_argument("cone_graph_area: bad radial range");
  const std::size_t d = s.codim;
  AreaResult res;
  double err = 0.0;
  const double inner = quad::integrate_adaptive(
      [&](double t) {
        std::vector<double> f(d, 0.0), fp(d, 0.0);
        for (std::size_t k = 1; k <= s.modes(); ++k) {
          const double lam = M_PI * double(k) / s.T;
          const double sn = std::sin(lam * t), cs = std::cos(lam * t);
          for (std::size_t c = 0; c < d; ++c) {
            f[c] += s.beta[k - 1][c] * sn;
            fp[c] += s.beta[k - 1][c] * lam * cs;
          }
        }
        // Cartesian gradient columns of F at angle t.
        std::vector<double> v1(d), v2(d);
        const double ct = std::cos(t), st = std::sin(t);
        for (std::size_t c = 0; c < d; ++c) {
          v1[c] = ct * f[c] - st * fp[c];
          v2[c] = st * f[c] + ct * fp[c];
        }
        return graph_jacobian(v1, v2);
      },
      0.0, s.T, 1e-11, 1e-14, &err, 24);
  const double half_r2 = 0.5 * (r1 * r1 - r0 * r0);
  res.value = half_r2 * inner;
  res.error = half_r2 * err;
  return res;
}

namespace {

AreaResult integrate_zones(const ReplacementGraph& g, double r0, double r1,
                           const std::function<double(double, double)>& fn) {
  std::vector<double> cuts{r0, r1};
  for (double s : g.seams())
    if (s > r0 && s < r1) cuts.push_back(s);
  std::sort(cuts.begin(), cuts.end());
  AreaResult res;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    res.value += quad::integrate2d_adaptive(fn, cuts[i], cuts[i + 1], 0.0,
                                            g.T(), 1e-10, 1e-13, &err, 12);
    res.error += err;
  }
  return res;
}

}  // namespace

AreaResult graph_area(const ReplacementGraph& g, double r0, double r1) {
  if (!(0.0 <= r0 && r0 < r1))
    throw std::invalid_argument("graph_area: bad radial range");
  const std::size_t d = g.codim();
  return integrate_zones(g, r0, r1, [&](double rho, double t) {
    std::vector<double> v1(d), v2(d);
    g.gradient(rho, t, v1.data(), v2.data());
    return graph_jacobian(v1, v2) * rho;
  });
}

AreaResult dirichlet_energy(const ReplacementGraph& g, double r0, double r1) {
  if (!(0.0 <= r0 && r0 < r1))
    throw std::invalid_argument("dirichlet_energy: bad radial range");
  const std::size_t d = g.codim();
  return integrate_zones(g, r0, r1, [&](double rho, double t) {
    std::vector<double> v1(d), v2(d);
    g.gradient(rho, t, v1.data(), v2.data());
    return (norm2(v1) + norm2(v2)) * rho;
  });
}

SavingReport area_saving(const SectorProfile& p, double kappa,
                         std::size_t modes, double eta_max) {
  if (p.eta > eta_max * (1.0 + 1e-12))
    throw std::invalid_argument("area_saving: profile eta exceeds eta_max");
  SavingReport rep;
  const ReplacementGraph g = build_replacement(p, kappa, modes);
  const AreaResult af = cone_graph_area(g.series(), 0.0, 0.9);
  const AreaResult ag = graph_area(g, 0.0, 0.9);
  rep.saving = af.value - ag.value;
  rep.quad_error = af.error + ag.error;
  rep.dirichlet_v = p.dirichlet_v();
  rep.gamma_length = p.gamma_length();
  rep.lower_bound = 1e-4 * std::max(rep.dirichlet_v, rep.gamma_length - p.T);
  rep.cone_energy = cone_energy(g.series());
  rep.harmonic_energy = harmonic_energy(g.series());
  rep.ratio = rep.cone_energy > 0.0 ? rep.harmonic_energy / rep.cone_energy : 0.0;
  rep.parseval_residual = g.series().parseval_residual;
  rep.lipschitz_estimate = g.lipschitz_estimate();
  rep.collar_energy = dirichlet_energy(g, 0.0, 3.0 * kappa).value;
  rep.pass = rep.saving >= rep.lower_bound - rep.quad_error;
  return rep;
}

std::string saving_json(const SavingReport& r) {
  std::ostringstream out;
  out << "{\n"
      << "  \"cone_energy\": " << g17(r.cone_energy) << ",\n"
      << "  \"harmonic_energy\": " << g17(r.harmonic_energy) << ",\n"
      << "  \"ratio\": " << g17(r.ratio) << ",\n"
      << "  \"saving\": " << g17(r.saving) << ",\n"
      << "  \"lower_bound\": " << g17(r.lower_bound) << ",\n"
      << "  \"quad_error\": " << g17(r.quad_error) << ",\n"
      << "  \"dirichlet_v\": " << g17(r.dirichlet_v) << ",\n"
      << "  \"gamma_length\": " << g17(r.gamma_length) << ",\n"
      << "  \"parseval_residual\": " << g17(r.parseval_residual) << ",\n"
      << "  \"lipschitz_estimate\": " << g17(r.lipschitz_estimate) << ",\n"
      << "  \"collar_energy\": " << g17(r.collar_energy) << ",\n"
      << "  \"pass\": " << (r.pass ? "true" : "false") << "\n"
      << "}\n";
  return out.str();
}

SectorProfile profile_from_csv(const std::string& text, double eta) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> ts;
  std::vector<std::vector<double>> vs;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() < 2) throw std::invalid_argument("profile csv: need t and at least one component");
    ts.push_back(vals[0]);
    vs.emplace_back(vals.begin() + 1, vals.end());
  }
  if (ts.size() < 3) throw std::invalid_argument("profile csv: too few rows");
  const double h = ts[1] - ts[0];
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    if (std::abs(ts[i + 1] - ts[i] - h) > 1e-9)
      throw std::invalid_argument("profile csv: grid must be uniform");
  if (std::abs(ts.front()) > 1e-12)
    throw std::invalid_argument("profile csv: grid must start at 0");
  return SectorProfile(ts.back(), std::move(vs), eta);
}

SectorProfile profile_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  return SectorProfile(j.at("T").get<double>(),
                       j.at("v").get<std::vector<std::vector<double>>>(),
                       j.value("eta", 0.05));
}

std::string profile_to_csv(const SectorProfile& p) {
  std::ostringstream out;
  const double h = p.dt();
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    out << g17(double(i) * h);
    for (double c : p.v[i]) out << ',' << g17(c);
    out << '\n';
  }
  return out.str();
}

}  // namespace conelab::harmonic
