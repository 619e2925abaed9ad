#include "conelab/straighten.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace conelab::curve {

using sphere::UnitVector;

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return s;
}

}  // namespace

SphericalCurve parameterize(std::span<const UnitVector> polyline,
                            const UnitVector& plane_u, const UnitVector& plane_v,
                            double tau1, double max_step, double eta0) {
  if (polyline.size() < 2)
    throw std::invalid_argument("parameterize: need at least two points");
  const std::size_t n = plane_u.dimension();
  if (plane_v.dimension() != n)
    throw std::invalid_argument("parameterize: plane frame dimension mismatch");
  if (std::abs(sphere::dot(plane_u.coords(), plane_v.coords())) > 1e-12)
    throw std::invalid_argument("parameterize: plane frame not orthonormal");
  for (const auto& p : polyline)
    if (p.dimension() != n)
      throw std::invalid_argument("parameterize: point dimension mismatch");

  // Hypotheses: length window (7.1), near-geodesic (7.2), proximity to the
  // plane (7.3), endpoints in the plane.
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
    length += sphere::geodesic_distance(polyline[i], polyline[i + 1]);
  if (length < 9.0 * eta0 || length > 10.0 * M_PI / 11.0)
    throw std::invalid_argument("parameterize: (7.1) length outside [9 eta0, 10pi/11]");
  const double d = sphere::geodesic_distance(polyline.front(), polyline.back());
  if (length > d + tau1 * (1.0 + 1e-9))
    throw std::invalid_argument("parameterize: (7.2) length exceeds dist(a,b) + tau1");
  auto off_plane = [&](const UnitVector& p) {
    // Norm of the residual after projecting onto the plane; the
    // 1 - a^2 - b^2 form would lose the small values to cancellation.
    const double a = sphere::dot(p.coords(), plane_u.coords());
    const double b = sphere::dot(p.coords(), plane_v.coords());
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = p[i] - a * plane_u[i] - b * plane_v[i];
      q += r * r;
    }
    return std::sqrt(q);
  };
  for (const auto& p : polyline)
    if (off_plane(p) > tau1)
      throw std::invalid_argument("parameterize: (7.3) point further than tau1 from the plane");
  if (off_plane(polyline.front()) > 1e-12 || off_plane(polyline.back()) > 1e-12)
    throw std::invalid_argument("parameterize: endpoints not in the plane");

  // Adapted orthonormal frame: plane_u, plane_v, then a completion.
  std::vector<std::vector<double>> frame{plane_u.coords(), plane_v.coords()};
  for (std::size_t m = 0; m < n && frame.size() < n; ++m) {
    std::vector<double> u(n, 0.0);
    u[m] = 1.0;
    for (const auto& b : frame) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += u[i] * b[i];
      for (std::size_t i = 0; i < n; ++i) u[i] -= c * b[i];
    }
    const double nz = sphere::norm(u);
    if (nz > 1e-8) {
      for (auto& x : u) x /= nz;
      frame.push_back(std::move(u));
    }
  }
  if (frame.size() != n)
    throw std::invalid_argument("parameterize: could not complete the frame");

  // Uniform arc-length resampling along the polyline (slerp per segment).
  const std::size_t cells = std::max<std::size_t>(16, std::size_t(std::ceil(length / max_step)));
  const double step = length / double(cells);
  std::vector<UnitVector> samples;
  samples.reserve(cells + 1);
  {
    std::size_t seg = 0;
    double seg_start = 0.0;
    double seg_len = sphere::geodesic_distance(polyline[0], polyline[1]);
    for (std::size_t i = 0; i <= cells; ++i) {
      const double s = std::min(double(i) * step, length);
      while (seg + 2 < polyline.size() && s > seg_start + seg_len) {
        seg_start += seg_len;
        ++seg;
        seg_len = sphere::geodesic_distance(polyline[seg], polyline[seg + 1]);
      }
      const double local = seg_len > 0.0 ? std::clamp((s - seg_start) / seg_len, 0.0, 1.0) : 0.0;
      if (local <= 0.0)
        samples.push_back(polyline[seg]);
      else if (local >= 1.0)
        samples.push_back(polyline[seg + 1]);
      else
        samples.push_back(sphere::geodesic_point(polyline[seg], polyline[seg + 1], local));
    }
  }

  SphericalCurve c;
  c.dimension = n;
  c.step = step;
  c.length = length;
  c.dist_ab = d;
  c.tau1 = tau1;
  auto decompose = [&](const std::vector<UnitVector>& pts) {
    c.z.clear();
    c.theta.clear();
    c.v.clear();
    c.w.clear();
    double prev_raw = 0.0, offset = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<double> adapted(n);
      for (std::size_t m = 0; m < n; ++m)
        adapted[m] = sphere::dot(pts[i].coords(), frame[m]);
      const double raw = std::atan2(adapted[1], adapted[0]);
      if (i == 0) {
        offset = 0.0;
      } else {
        double delta = raw - prev_raw;
        while (delta > M_PI) delta -= 2.0 * M_PI;
        while (delta < -M_PI) delta += 2.0 * M_PI;
        offset += delta;
      }
      prev_raw = raw;
      c.theta.push_back(i == 0 ? raw : c.theta.front() + offset);
      std::vector<double> vv(adapted.begin() + 2, adapted.end());
      c.w.push_back(std::sqrt(std::max(1.0 - norm2(vv), 0.0)));
      c.v.push_back(std::move(vv));
      c.z.push_back(UnitVector(std::move(adapted)));
    }
  };
  decompose(samples);
  if (c.theta.back() < c.theta.front()) {
    std::reverse(samples.begin(), samples.end());
    decompose(samples);
    c.reversed = true;
  }
  const double winding = c.theta.back() - c.theta.front();
  if (std::abs(winding - d) > 1e-9 + 2.0 * tau1)
    throw std::invalid_argument("parameterize: (7.7) winding of theta does not match dist(a,b)");
  // Unit-speed check on the resampled grid.
  for (std::size_t i = 0; i + 1 < c.z.size(); ++i) {
    const double seg = sphere::geodesic_distance(c.z[i], c.z[i + 1]);
    if (std::abs(seg / step - 1.0) > 1e-6)
      throw std::invalid_argument("parameterize: resampled curve is not unit speed within 1e-6");
  }
  return c;
}

EnergyReport energy_diagnostics(const SphericalCurve& c) {
  EnergyReport rep;
  rep.delta_l = c.delta_l();
  rep.min_f = std::numeric_limits<double>::infinity();
  const double h = c.step;
  for (std::size_t i = 0; i + 1 < c.z.size(); ++i) {
    double dv2 = 0.0, mid2 = 0.0;
    for (std::size_t k = 0; k < c.v[i].size(); ++k) {
      const double diff = c.v[i + 1][k] - c.v[i][k];
      dv2 += diff * diff;
      const double m = 0.5 * (c.v[i + 1][k] + c.v[i][k]);
      mid2 += m * m;
    }
    rep.dirichlet_v += dv2 / h;
    const double dtheta = (c.theta[i + 1] - c.theta[i]) / h;
    const double f = 1.0 + 2.0 * mid2 - dtheta;
    rep.integral_f += f * h;
    rep.min_f = std::min(rep.min_f, f);
  }
  rep.margin_v = 14.0 * rep.delta_l - rep.dirichlet_v;
  rep.margin_f = 30.0 * rep.delta_l - rep.integral_f;
  return rep;
}

std::vector<double> noncentered_maximal(std::span<const double> g) {
  const std::size_t m = g.size();
  if (m == 0) return {};
  for (double x : g)
    if (x < 0.0) throw std::invalid_argument("noncentered_maximal: negative input");
  std::vector<double> prefix(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + g[i];
  std::vector<double> out(m, -std::numeric_limits<double>::infinity());
  std::vector<double> suffix(m + 1);
  for (std::size_t p = 0; p < m; ++p) {
    // suffix[q] = max over q' >= q of the average on cells [p, q').
    suffix[m] = (prefix[m] - prefix[p]) / double(m - p);
    for (std::size_t q = m - 1; q > p; --q)
      suffix[q] = std::max((prefix[q] - prefix[p]) / double(q - p), suffix[q + 1]);
    for (std::size_t i = p; i < m; ++i)
      out[i] = std::max(out[i], suffix[i + 1]);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> maximal_superlevel(
    std::span<const double> g, double lambda) {
  const std::size_t m = g.size();
  std::vector<double> h(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) h[i + 1] = h[i] + (g[i] - lambda);
  std::vector<double> premin(m + 1), sufmax(m + 1);
  premin[0] = h[0];
  for (std::size_t i = 1; i <= m; ++i) premin[i] = std::min(premin[i - 1], h[i]);
  sufmax[m] = h[m];
  for (std::size_t i = m; i-- > 0;) sufmax[i] = std::max(sufmax[i + 1], h[i]);
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < m; ++i) {
    const bool bad = sufmax[i + 1] > premin[i];
    if (bad) {
      if (!runs.empty() && runs.back().second == i)
        runs.back().second = i + 1;
      else
        runs.emplace_back(i, i + 1);
    }
  }
  return runs;
}

namespace {

// Point on the geodesic from za to zb whose projection onto the plane has
// angle phi; the angle is monotone along short low-slope geodesics.
UnitVector geodesic_at_angle(const UnitVector& za, const UnitVector& zb,
                             double theta_a, double theta_b, double phi) {
  auto angle_of = [&](const UnitVector& p, double near) {
    double raw = std::atan2(p[1], p[0]);
    while (raw < near - M_PI) raw += 2.0 * M_PI;
    while (raw > near + M_PI) raw -= 2.0 * M_PI;
    return raw;
  };
  double lo = 0.0, hi = 1.0;
  const double mid_guess = 0.5 * (theta_a + theta_b);
  for (int it = 0; it < 64; ++it) {
    const double u = 0.5 * (lo + hi);
    const UnitVector p = sphere::geodesic_point(za, zb, u);
    if (angle_of(p, mid_guess) < phi)
      lo = u;
    else
      hi = u;
  }
  return sphere::geodesic_point(za, zb, 0.5 * (lo + hi));
}

}  // namespace

StraightenResult straighten(const SphericalCurve& c, double eta) {
  if (!(eta > 0.0) || eta > 0.1)
    throw std::invalid_argument("straighten: eta outside (0, 0.1]");
  if (eta * eta * c.length <= c.tau1)
    throw std::invalid_argument("straighten: (7.34) tau1 too large relative to eta^2 |I|");
  const std::size_t m = c.z.size() - 1;
  const double h = c.step;

  std::vector<double> dv(m), f(m);
  for (std::size_t i = 0; i < m; ++i) {
    double dv2 = 0.0, mid2 = 0.0;
    for (std::size_t k = 0; k < c.v[i].size(); ++k) {
      const double diff = c.v[i + 1][k] - c.v[i][k];
      dv2 += diff * diff;
      const double mid = 0.5 * (c.v[i + 1][k] + c.v[i][k]);
      mid2 += mid * mid;
    }
    dv[i] = std::sqrt(dv2) / h;
    f[i] = std::max(1.0 + 2.0 * mid2 - (c.theta[i + 1] - c.theta[i]) / h, 0.0);
  }
  const auto z1 = maximal_superlevel(dv, eta / 4.0);
  const auto z2 = maximal_superlevel(f, 0.5);

  std::vector<char> bad_cell(m, 0);
  for (const auto& r : z1)
    for (std::size_t i = r.first; i < r.second; ++i) bad_cell[i] = 1;
  for (const auto& r : z2)
    for (std::size_t i = r.first; i < r.second; ++i) bad_cell[i] = 1;

  StraightenResult res;
  res.gamma = c;
  res.delta_l = c.delta_l();

  std::size_t bad_count = 0;
  for (std::size_t i = 0; i < m; ++i) bad_count += bad_cell[i];
  if (bad_count == m)
    throw std::invalid_argument("straighten: bad set covers the whole curve");

  for (std::size_t i = 0; i < m;) {
    if (!bad_cell[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < m && bad_cell[j]) ++j;
    res.bad.emplace_back(i, j);  // grid points i .. j
    const UnitVector& za = c.z[i];
    const UnitVector& zb = c.z[j];
    const double ta = c.theta[i], tb = c.theta[j];
    if (!(tb > ta) || tb - ta >= M_PI)
      throw std::invalid_argument("straighten: replaced component spans a degenerate angle");
    const double geo = sphere::geodesic_distance(za, zb);
    res.removed_length += double(j - i) * h;
    res.added_length += geo;
    for (std::size_t p = i + 1; p < j; ++p) {
      // Affine angle, point on the replacing geodesic at that angle.
      const double phi = ta + (tb - ta) * double(p - i) / double(j - i);
      const UnitVector xi = geodesic_at_angle(za, zb, ta, tb, phi);
      res.gamma.theta[p] = phi;
      std::vector<double> vv(xi.coords().begin() + 2, xi.coords().end());
      res.gamma.w[p] = std::sqrt(std::max(1.0 - norm2(vv), 0.0));
      res.gamma.v[p] = std::move(vv);
      res.gamma.z[p] = xi;
    }
    i = j;
  }
  res.bad_measure = double(bad_count) * h;
  res.gamma.length = c.length - res.removed_length + res.added_length;
  res.c_hat = res.delta_l > 0.0 ? res.bad_measure * eta * eta / res.delta_l : 0.0;

  // Lipschitz certificate (7.43) per cell; with theta strictly increasing
  // this extends to every grid pair by summation.
  res.lipschitz_margin = std::numeric_limits<double>::infinity();
  res.min_dtheta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double dv2 = 0.0;
    for (std::size_t k = 0; k < c.v[i].size(); ++k) {
      const double diff = res.gamma.v[i + 1][k] - res.gamma.v[i][k];
      dv2 += diff * diff;
    }
    const double dtheta = res.gamma.theta[i + 1] - res.gamma.theta[i];
    res.min_dtheta = std::min(res.min_dtheta, dtheta);
    res.lipschitz_margin = std::min(
        res.lipschitz_margin, 0.8 * eta * dtheta - std::sqrt(dv2));
  }
  return res;
}

harmonic::SectorProfile to_sector_profile(const StraightenResult& r, double eta,
                                          std::size_t samples) {
  const SphericalCurve& g = r.gamma;
  const double t0 = g.theta.front();
  const double T = g.theta.back() - t0;
  if (samples == 0) samples = 4096;
  std::vector<std::vector<double>> v(samples + 1);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i <= samples; ++i) {
    const double phi = t0 + T * double(i) / double(samples);
    while (cursor + 2 < g.theta.size() && g.theta[cursor + 1] < phi) ++cursor;
    const double lo = g.theta[cursor], hi = g.theta[cursor + 1];
    const double u = hi > lo ? std::clamp((phi - lo) / (hi - lo), 0.0, 1.0) : 0.0;
    std::vector<double> vv(g.v[cursor].size());
    for (std::size_t k = 0; k < vv.size(); ++k)
      vv[k] = (1.0 - u) * g.v[cursor][k] + u * g.v[cursor + 1][k];
    v[i] = std::move(vv);
  }
  return harmonic::SectorProfile(T, std::move(v), eta);
}

std::string straighten_json(const StraightenResult& r) {
  std::ostringstream out;
  out << "{\n  \"bad_intervals\": [";
  for (std::size_t i = 0; i < r.bad.size(); ++i) {
    if (i) out << ", ";
    out << '[' << g17(double(r.bad[i].first) * r.gamma.step) << ", "
        << g17(double(r.bad[i].second) * r.gamma.step) << ']';
  }
  out << "],\n"
      << "  \"bad_measure\": " << g17(r.bad_measure) << ",\n"
      << "  \"removed_length\": " << g17(r.removed_length) << ",\n"
      << "  \"added_length\": " << g17(r.added_length) << ",\n"
      << "  \"delta_l\": " << g17(r.delta_l) << ",\n"
      << "  \"output_length\": " << g17(r.gamma.length) << ",\n"
      << "  \"lipschitz_margin\": " << g17(r.lipschitz_margin) << ",\n"
      << "  \"min_dtheta\": " << g17(r.min_dtheta) << ",\n"
      << "  \"C_hat\": " << g17(r.c_hat) << "\n"
      << "}\n";
  return out.str();
}

std::vector<UnitVector> curve_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<UnitVector> pts;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    pts.push_back(UnitVector::normalized(std::move(vals)));
  }
  if (pts.size() < 2) throw std::invalid_argument("curve csv: too few points");
  return pts;
}

std::vector<UnitVector> curve_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  std::vector<UnitVector> pts;
  for (const auto& row : j.at("points"))
    pts.push_back(UnitVector::normalized(row.get<std::vector<double>>()));
  if (pts.size() < 2) throw std::invalid_argument("curve json: too few points");
  return pts;
}

}  // namespace conelab::curve
