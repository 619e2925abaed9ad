#include "conelab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "conelab/quadrature.hpp"
#include "conelab/rng.hpp"
#include "conelab/tolerances.hpp"

namespace conelab::perturb {

using net::ConeNet;
using net::VertexKind;
using net::VertexMap;
using sphere::UnitVector;

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Flat-array evaluator for the hot sampling loop: vertex positions live in
// one buffer, combinatorics are index pairs.
struct Evaluator {
  std::size_t n = 0;
  std::size_t nv = 0;
  std::vector<double> base;                         // nv * n
  std::vector<std::array<std::size_t, 2>> arcs;     // endpoint indices
  std::vector<std::vector<std::size_t>> neighbors;  // per vertex
  std::vector<VertexKind> kinds;
  std::vector<std::string> ids;

  explicit Evaluator(const ConeNet& net) {
    n = net.dimension();
    nv = net.vertices().size();
    base.resize(nv * n);
    kinds.resize(nv);
    neighbors.resize(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      const auto& v = net.vertices()[i];
      kinds[i] = v.kind;
      ids.push_back(v.id);
      for (std::size_t d = 0; d < n; ++d) base[i * n + d] = v.position[d];
    }
    for (const auto& a : net.arcs()) {
      const std::size_t u = net.vertex_index(a.ends[0]);
      const std::size_t w = net.vertex_index(a.ends[1]);
      arcs.push_back({u, w});
      neighbors[u].push_back(w);
      neighbors[w].push_back(u);
    }
  }

  static double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

  double length(const std::vector<double>& pos) const {
    double total = 0.0;
    for (const auto& a : arcs) {
      double d = 0.0;
      const double* p = &pos[a[0] * n];
      const double* q = &pos[a[1] * n];
      for (std::size_t i = 0; i < n; ++i) d += p[i] * q[i];
      total += std::acos(clamp1(d));
    }
    return total;
  }

  // Unit tangent at vertex i toward vertex j, written into t.
  void tangent(const std::vector<double>& pos, std::size_t i, std::size_t j,
               double* t) const {
    const double* p = &pos[i * n];
    const double* q = &pos[j * n];
    double c = 0.0;
    for (std::size_t d = 0; d < n; ++d) c += p[d] * q[d];
    double nrm = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      t[d] = q[d] - c * p[d];
      nrm += t[d] * t[d];
    }
    nrm = std::sqrt(nrm);
    if (nrm < tolerances().degenerate)
      throw std::invalid_argument("perturb: degenerate arc after mapping");
    for (std::size_t d = 0; d < n; ++d) t[d] /= nrm;
  }

  double deviation(const std::vector<double>& pos, std::size_t i,
                   std::vector<double>& scratch) const {
    const auto& nb = neighbors[i];
    if (kinds[i] == VertexKind::V0) {
      if (nb.size() != 3)
        throw std::invalid_argument("perturb: V0 vertex without three arcs");
      scratch.assign(n, 0.0);
      std::vector<double> t(n);
      for (std::size_t j : nb) {
        tangent(pos, i, j, t.data());
        for (std::size_t d = 0; d < n; ++d) scratch[d] += t[d];
      }
      double s = 0.0;
      for (std::size_t d = 0; d < n; ++d) s += scratch[d] * scratch[d];
      return std::sqrt(s);
    }
    if (nb.size() != 2)
      throw std::invalid_argument("perturb: V1 vertex without two arcs");
    std::vector<double> t1(n), t2(n);
    tangent(pos, i, nb[0], t1.data());
    tangent(pos, i, nb[1], t2.data());
    // pi - theta via 2 asin(|t1+t2|/2); exact at straight junctions where
    // acos would be ill-conditioned.
    double s = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      const double c = t1[d] + t2[d];
      s += c * c;
    }
    return 2.0 * std::asin(clamp1(std::sqrt(s) / 2.0));
  }

  double alpha_plus(const std::vector<double>& pos,
                    std::vector<double>& scratch) const {
    double a = 0.0;
    for (std::size_t i = 0; i < nv; ++i)
      a = std::max(a, deviation(pos, i, scratch));
    return a;
  }
};

std::vector<double> mapped_positions(const VertexMap& phi,
                                     const Evaluator& ev) {
  std::vector<double> pos(ev.base);
  for (std::size_t i = 0; i < ev.nv; ++i) {
    const UnitVector& p = phi.at(ev.ids[i]);
    if (p.dimension() != ev.n)
      throw std::invalid_argument("perturb: image dimension mismatch");
    double chord = 0.0;
    for (std::size_t d = 0; d < ev.n; ++d) {
      const double diff = p[d] - ev.base[i * ev.n + d];
      chord += diff * diff;
    }
    if (std::sqrt(chord) > phi.eta1() * (1.0 + 1e-12))
      throw std::invalid_argument("perturb: vertex " + ev.ids[i] + " moved beyond eta1");
    for (std::size_t d = 0; d < ev.n; ++d) pos[i * ev.n + d] = p[d];
  }
  return pos;
}

}  // namespace

double vertex_deviation(const ConeNet& net, const VertexMap& phi,
                        const std::string& vertex_id) {
  const Evaluator ev(net);
  const auto pos = mapped_positions(phi, ev);
  std::vector<double> scratch;
  return ev.deviation(pos, net.vertex_index(vertex_id), scratch);
}

double alpha_plus(const ConeNet& net, const VertexMap& phi) {
  const Evaluator ev(net);
  const auto pos = mapped_positions(phi, ev);
  std::vector<double> scratch;
  return ev.alpha_plus(pos, scratch);
}

DeviationReport deviation_report(const ConeNet& net, const VertexMap& phi) {
  const Evaluator ev(net);
  const auto pos = mapped_positions(phi, ev);
  std::vector<double> scratch;
  DeviationReport rep;
  for (std::size_t i = 0; i < ev.nv; ++i) {
    const double a = ev.deviation(pos, i, scratch);
    rep.per_vertex.emplace_back(ev.ids[i], a);
    rep.alpha_plus = std::max(rep.alpha_plus, a);
  }
  rep.length_delta = ev.length(pos) - ev.length(ev.base);
  if (rep.alpha_plus >= tolerances().alpha_floor && rep.length_delta > 0.0)
    rep.ratio = rep.length_delta / (rep.alpha_plus * rep.alpha_plus);
  return rep;
}

namespace {

double smoothstep(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3.0 - 2.0 * u);
}

double smoothstep_d(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 6.0 * u * (1.0 - u);
}

}  // namespace

Bump::Bump(double eta0) : height(eta0 / 10.0) {
  // Longitudinal profile: rise on [0.25,0.26], plateau on [0.26,0.46],
  // fall on [0.46,0.5]; integrates to 0.2 + 0.005 + 0.02.
  plateau_mass = 0.225;
}

namespace {
double bump_g(double z1) {
  if (z1 <= 0.25 || z1 >= 0.5) return 0.0;
  if (z1 < 0.26) return smoothstep((z1 - 0.25) / 0.01);
  if (z1 <= 0.46) return 1.0;
  return 1.0 - smoothstep((z1 - 0.46) / 0.04);
}
double bump_g_d(double z1) {
  if (z1 <= 0.25 || z1 >= 0.5) return 0.0;
  if (z1 < 0.26) return smoothstep_d((z1 - 0.25) / 0.01) / 0.01;
  if (z1 <= 0.46) return 0.0;
  return -smoothstep_d((z1 - 0.46) / 0.04) / 0.04;
}
}  // namespace

double Bump::value(double z1, double rho) const {
  if (rho < 0.0 || rho >= height) return 0.0;
  return bump_g(z1) * (1.0 - smoothstep(rho / height));
}

double Bump::d_z1(double z1, double rho) const {
  if (rho < 0.0 || rho >= height) return 0.0;
  return bump_g_d(z1) * (1.0 - smoothstep(rho / height));
}

double Bump::d_rho(double z1, double rho) const {
  if (rho < 0.0 || rho >= height) return 0.0;
  return -bump_g(z1) * smoothstep_d(rho / height) / height;
}

double Bump::grad_sup() const { return std::max(150.0, 1.5 / height); }

PushResult push_deformation_area_gain(const ConeNet& net, const VertexMap& phi,
                                      const std::string& vertex_id, double c) {
  if (c <= 0.0) throw std::invalid_argument("push: c must be positive");
  const Evaluator ev(net);
  const auto pos = mapped_positions(phi, ev);
  const std::size_t xi = net.vertex_index(vertex_id);
  const std::size_t n = ev.n;

  std::vector<double> scratch;
  const double alpha = ev.deviation(pos, xi, scratch);
  if (alpha < 1e-15)
    throw std::invalid_argument("push: no deviation to exploit");

  // Tangents of the faces at phi(x) and their sum s.
  const auto& nb = ev.neighbors[xi];
  std::vector<std::vector<double>> w(nb.size(), std::vector<double>(n));
  std::vector<double> s(n, 0.0);
  for (std::size_t k = 0; k < nb.size(); ++k) {
    ev.tangent(pos, xi, nb[k], w[k].data());
    for (std::size_t d = 0; d < n; ++d) s[d] += w[k][d];
  }
  double s_norm = sphere::norm(s);
  if (s_norm < 1e-15) throw std::invalid_argument("push: no deviation to exploit");

  const Bump psi(net.eta0());
  const double vnorm = c * s_norm;
  if (vnorm > net.eta0() / 20.0 * (1.0 + 1e-9))
    throw std::invalid_argument("push: displacement |c s| exceeds eta0/20");
  if (vnorm * psi.grad_sup() >= 1.0)
    throw std::invalid_argument("push: displacement too large for the bump gradient");

  // The support of psi must stay inside every face sector and away from
  // the sectors over non-incident arcs.
  const double support_angle = std::atan(psi.height / 0.25);
  for (std::size_t k = 0; k < ev.arcs.size(); ++k) {
    const auto& a = ev.arcs[k];
    double d = 0.0;
    const double* p = &pos[a[0] * n];
    const double* q = &pos[a[1] * n];
    for (std::size_t i = 0; i < n; ++i) d += p[i] * q[i];
    const double len = std::acos(Evaluator::clamp1(d));
    if (a[0] == xi || a[1] == xi) {
      if (len <= support_angle)
        throw std::invalid_argument("push: face sector shorter than the bump support");
    } else {
      // Chord distance from phi(x) to the arc; sectors over far arcs never
      // meet the moved region.
      const double dist = [&] {
        std::vector<double> px(pos.begin() + xi * n, pos.begin() + (xi + 1) * n);
        const UnitVector pa = UnitVector::normalized(
            std::vector<double>(pos.begin() + a[0] * n, pos.begin() + (a[0] + 1) * n));
        const UnitVector pb = UnitVector::normalized(
            std::vector<double>(pos.begin() + a[1] * n, pos.begin() + (a[1] + 1) * n));
        double best = std::numeric_limits<double>::infinity();
        const int m = 64;
        for (int t = 0; t <= m; ++t) {
          const UnitVector qq = t == 0 ? pa : (t == m ? pb : sphere::geodesic_point(pa, pb, double(t) / m));
          double ch = 0.0;
          for (std::size_t i = 0; i < n; ++i) ch += (qq[i] - px[i]) * (qq[i] - px[i]);
          best = std::min(best, std::sqrt(ch));
        }
        return best;
      }();
      if (dist < 0.7 * net.eta0())
        throw std::invalid_argument("push: foreign face near the vertex support");
    }
  }

  // Per-face quadrature of 1 - J1 with
  // J1 = sqrt((1 + beta dpsi/drho)^2 + |v3|^2 |grad psi|^2),
  // beta = <v, w_j>, |v3|^2 = |v|^2 - beta^2.
  PushResult result{0.0, s_norm, 0.0, psi.plateau_mass};
  const double claimed = (c / 10.0) * s_norm * s_norm;
  const auto breaks = Bump::z1_breaks();
  for (std::size_t k = 0; k < nb.size(); ++k) {
    double beta = 0.0;
    for (std::size_t d = 0; d < n; ++d) beta += c * s[d] * w[k][d];
    const double v3sq = std::max(vnorm * vnorm - beta * beta, 0.0);
    auto integrand = [&](double z1, double rho) {
      const double dr = psi.d_rho(z1, rho);
      const double dz = psi.d_z1(z1, rho);
      const double a1 = 1.0 + beta * dr;
      return 1.0 - std::sqrt(a1 * a1 + v3sq * (dr * dr + dz * dz));
    };
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      double err = 0.0;
      result.gain += quad::integrate2d_adaptive(
          integrand, breaks[p], breaks[p + 1], 0.0, psi.height, 1e-12,
          0.01 * claimed, &err);
      result.quad_error += err;
    }
  }
  return result;
}

double length_gradient_norm(const ConeNet& net, double step) {
  const Evaluator ev(net);
  std::vector<double> pos(ev.base);
  double sq = 0.0;
  for (std::size_t i = 0; i < ev.nv; ++i) {
    // Orthonormal tangent basis at vertex i by Gram-Schmidt over the axes.
    std::vector<std::vector<double>> basis;
    const double* p = &ev.base[i * ev.n];
    for (std::size_t m = 0; m < ev.n; ++m) {
      std::vector<double> u(ev.n, 0.0);
      u[m] = 1.0;
      double cp = 0.0;
      for (std::size_t d = 0; d < ev.n; ++d) cp += u[d] * p[d];
      for (std::size_t d = 0; d < ev.n; ++d) u[d] -= cp * p[d];
      for (const auto& b : basis) {
        double cb = 0.0;
        for (std::size_t d = 0; d < ev.n; ++d) cb += u[d] * b[d];
        for (std::size_t d = 0; d < ev.n; ++d) u[d] -= cb * b[d];
      }
      const double nrm = sphere::norm(u);
      if (nrm < 1e-8) continue;
      for (auto& x : u) x /= nrm;
      basis.push_back(std::move(u));
      if (basis.size() == ev.n - 1) break;
    }
    for (const auto& u : basis) {
      auto moved = [&](double eps) {
        double nrm = 0.0;
        for (std::size_t d = 0; d < ev.n; ++d) {
          pos[i * ev.n + d] = p[d] + eps * u[d];
          nrm += pos[i * ev.n + d] * pos[i * ev.n + d];
        }
        nrm = std::sqrt(nrm);
        for (std::size_t d = 0; d < ev.n; ++d) pos[i * ev.n + d] /= nrm;
        return ev.length(pos);
      };
      const double lp = moved(step);
      const double lm = moved(-step);
      for (std::size_t d = 0; d < ev.n; ++d) pos[i * ev.n + d] = p[d];
      const double g = (lp - lm) / (2.0 * step);
      sq += g * g;
    }
  }
  return std::sqrt(sq);
}

namespace {

struct SampleScratch {
  std::vector<double> pos;
  std::vector<double> scratch;
  std::vector<double> dir;
};

// Applies the sample with the given id to `pos` (starting from base).
// Even ids draw isotropic Gaussian displacements of every vertex; odd ids
// run structured one-vertex families (tangential, off-span, along-arc) over
// a magnitude grid.
void apply_sample(const Evaluator& ev, std::uint64_t seed, std::size_t id,
                  double eta1, SampleScratch& ws) {
  ws.pos = ev.base;
  Rng rng = Rng::stream(seed, id);
  const std::size_t n = ev.n;
  if (id % 2 == 0) {
    for (std::size_t i = 0; i < ev.nv; ++i) {
      ws.dir.assign(n, 0.0);
      double nrm = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        ws.dir[d] = rng.normal();
        nrm += ws.dir[d] * ws.dir[d];
      }
      nrm = std::sqrt(nrm);
      if (nrm < 1e-300) continue;
      const double want = 0.49 * eta1 * rng.uniform();
      const double scale = want / nrm;
      double pn = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        ws.pos[i * n + d] += scale * ws.dir[d];
        pn += ws.pos[i * n + d] * ws.pos[i * n + d];
      }
      pn = std::sqrt(pn);
      for (std::size_t d = 0; d < n; ++d) ws.pos[i * n + d] /= pn;
    }
    return;
  }
  const std::size_t k = id / 2;
  const std::size_t vi = k % ev.nv;
  const std::size_t family = (k / ev.nv) % 3;
  const double mag = eta1 / double(1u << ((k / (ev.nv * 3)) % 4));
  const double* p = &ev.base[vi * n];

  ws.dir.assign(n, 0.0);
  bool have_dir = false;
  if (family == 2) {
    // Along the first incident arc.
    const std::size_t j = ev.neighbors[vi].front();
    ev.tangent(ev.base, vi, j, ws.dir.data());
    have_dir = true;
  } else if (family == 1) {
    // Direction orthogonal to the vertex and to all incident tangents
    // (the normal lift), when the ambient dimension leaves room.
    std::vector<std::vector<double>> span;
    span.emplace_back(p, p + n);
    for (std::size_t j : ev.neighbors[vi]) {
      std::vector<double> t(n);
      ev.tangent(ev.base, vi, j, t.data());
      span.push_back(std::move(t));
    }
    for (std::size_t m = 0; m < n && !have_dir; ++m) {
      std::vector<double> u(n, 0.0);
      u[m] = 1.0;
      for (const auto& b : span) {
        double cb = 0.0;
        for (std::size_t d = 0; d < n; ++d) cb += u[d] * b[d];
        const double bn = sphere::dot(b, b);
        for (std::size_t d = 0; d < n; ++d) u[d] -= cb * b[d] / bn;
      }
      if (sphere::norm(u) > 0.3) {
        const double nrm = sphere::norm(u);
        for (std::size_t d = 0; d < n; ++d) ws.dir[d] = u[d] / nrm;
        have_dir = true;
      }
    }
  }
  if (!have_dir) {
    // Random tangent direction.
    double nrm = 0.0;
    for (std::size_t d = 0; d < n; ++d) ws.dir[d] = rng.normal();
    double cp = 0.0;
    for (std::size_t d = 0; d < n; ++d) cp += ws.dir[d] * p[d];
    for (std::size_t d = 0; d < n; ++d) ws.dir[d] -= cp * p[d];
    nrm = sphere::norm(ws.dir);
    if (nrm < 1e-12) return;  // keep identity sample
    for (std::size_t d = 0; d < n; ++d) ws.dir[d] /= nrm;
  }
  // Great-circle move with chord exactly `mag`.
  const double ang = 2.0 * std::asin(std::min(mag / 2.0, 1.0));
  for (std::size_t d = 0; d < n; ++d)
    ws.pos[vi * n + d] = std::cos(ang) * p[d] + std::sin(ang) * ws.dir[d];
}

}  // namespace

Certificate full_length_certificate(const ConeNet& net,
                                    const CertificateOptions& options) {
  const auto validation = net::validate_minimal_looking(net);
  if (!validation.pass)
    throw std::invalid_argument("full_length_certificate: net fails minimal-looking validation");
  if (options.budget == 0)
    throw std::invalid_argument("full_length_certificate: empty budget");

  const Evaluator ev(net);
  Certificate cert;
  cert.component = "all";
  cert.budget = options.budget;
  cert.seed = options.seed;
  cert.eta1 = options.eta1;
  cert.eta1_within_paper_range = options.eta1 < net.eta0() / 10.0;
  cert.gradient_norm = length_gradient_norm(net);

  const double base_length = ev.length(ev.base);
  const double floor = tolerances().alpha_floor;
  // Lengthening below the accumulated arccos rounding is indistinguishable
  // from zero; such samples must not seed ratios.
  const double delta_floor = 64.0 * 2.3e-16 * base_length;

  SampleScratch ws;
  double sup = 0.0, sup_base = 0.0;
  std::size_t worst = 0;
  for (std::size_t id = 0; id < 2 * options.budget; ++id) {
    apply_sample(ev, options.seed, id, options.eta1, ws);
    const double delta = ev.length(ws.pos) - base_length;
    std::optional<double> ratio;
    double alpha = 0.0;
    if (delta > delta_floor) {
      ++cert.lengthening_samples;
      alpha = ev.alpha_plus(ws.pos, ws.scratch);
      if (alpha >= floor) {
        ratio = delta / (alpha * alpha);
        ++cert.ratio_samples;
        if (*ratio > sup) {
          sup = *ratio;
          worst = id;
        }
        if (id < options.budget) sup_base = std::max(sup_base, *ratio);
      }
    } else if (options.keep_rows) {
      alpha = ev.alpha_plus(ws.pos, ws.scratch);
    }
    if (options.keep_rows) cert.rows.push_back({id, alpha, delta, ratio});
  }
  cert.c_hat = sup;
  cert.c_hat_base = sup_base;
  cert.worst_sample = worst;
  const double ref = std::max(cert.c_hat, 1e-300);
  cert.pass = std::isfinite(cert.c_hat) &&
              std::abs(cert.c_hat - cert.c_hat_base) <= options.stability * ref &&
              cert.gradient_norm < options.gradient_bound;
  return cert;
}

std::vector<Certificate> componentwise_certificate(
    const ConeNet& net, const CertificateOptions& options) {
  const auto parts = net::connected_components(net);
  std::vector<Certificate> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Certificate c = full_length_certificate(parts[i], options);
    c.component = "component-" + std::to_string(i);
    out.push_back(std::move(c));
  }
  return out;
}

std::string certificate_csv(const Certificate& c) {
  std::ostringstream out;
  out << "sample_id,alpha_plus,length_delta,ratio\n";
  for (const auto& r : c.rows) {
    out << r.id << ',' << g17(r.alpha_plus) << ',' << g17(r.length_delta) << ',';
    if (r.ratio) out << g17(*r.ratio);
    out << '\n';
  }
  return out.str();
}

std::string certificate_json(const Certificate& c) {
  std::ostringstream out;
  out << "{\n"
      << "  \"component\": \"" << c.component << "\",\n"
      << "  \"pass\": " << (c.pass ? "true" : "false") << ",\n"
      << "  \"C_hat\": " << g17(c.c_hat) << ",\n"
      << "  \"C_hat_base\": " << g17(c.c_hat_base) << ",\n"
      << "  \"gradient_norm\": " << g17(c.gradient_norm) << ",\n"
      << "  \"budget\": " << c.budget << ",\n"
      << "  \"seed\": " << c.seed << ",\n"
      << "  \"eta1\": " << g17(c.eta1) << ",\n"
      << "  \"eta1_within_paper_range\": "
      << (c.eta1_within_paper_range ? "true" : "false") << ",\n"
      << "  \"lengthening_samples\": " << c.lengthening_samples << ",\n"
      << "  \"ratio_samples\": " << c.ratio_samples << ",\n"
      << "  \"worst_sample\": " << c.worst_sample << "\n"
      << "}\n";
  return out.str();
}

}  // namespace conelab::perturb
