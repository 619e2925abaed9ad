#include "conelab/cone_net.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "conelab/tolerances.hpp"

namespace conelab::net {

using sphere::UnitVector;
using sphere::Vec;

namespace {

constexpr double kMaxArc = 9.0 * M_PI / 10.0;

double chord(const UnitVector& a, const UnitVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Exact Euclidean distance from p to the geodesic arc from a to b
// (the minor arc, as stored in a ConeNet).
double distance_to_arc(std::span<const double> p, const UnitVector& a,
                       const UnitVector& b) {
  const double theta = sphere::geodesic_distance(a, b);
  const UnitVector t = sphere::tangent_at(a, b);
  const double x1 = sphere::dot(p, a.coords());
  const double x2 = sphere::dot(p, t.coords());
  const double phi = std::atan2(x2, x1);
  if (phi >= 0.0 && phi <= theta) {
    // Closest point is the radial projection onto the arc.
    const double rho = std::hypot(x1, x2);
    double rest = sphere::dot(p, p) - x1 * x1 - x2 * x2;
    rest = std::max(rest, 0.0);
    return std::sqrt(rest + (rho - 1.0) * (rho - 1.0));
  }
  double da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    da += (p[i] - a[i]) * (p[i] - a[i]);
    db += (p[i] - b[i]) * (p[i] - b[i]);
  }
  return std::sqrt(std::min(da, db));
}

// Distance from p to the planar sector {s * q : s >= 0, q on arc(a,b)}.
double distance_to_sector(std::span<const double> p, const UnitVector& a,
                          const UnitVector& b) {
  const double theta = sphere::geodesic_distance(a, b);
  const UnitVector t = sphere::tangent_at(a, b);
  const double x1 = sphere::dot(p, a.coords());
  const double x2 = sphere::dot(p, t.coords());
  double rest = sphere::dot(p, p) - x1 * x1 - x2 * x2;
  rest = std::max(rest, 0.0);
  const double phi = std::atan2(x2, x1);
  double planar2 = 0.0;
  if (phi < 0.0 || phi > theta) {
    // Distance to the two bounding rays within the plane.
    const double ray1 = [&] {
      const double proj = std::max(x1, 0.0);
      return (x1 - proj) * (x1 - proj) + x2 * x2;
    }();
    const double c = std::cos(theta), s = std::sin(theta);
    const double along = std::max(x1 * c + x2 * s, 0.0);
    const double r2x = x1 - along * c, r2y = x2 - along * s;
    planar2 = std::min(ray1, r2x * r2x + r2y * r2y);
  }
  return std::sqrt(rest + planar2);
}

}  // namespace

ConeNet::ConeNet(std::size_t dimension, std::vector<Vertex> vertices,
                 std::vector<Arc> arcs, double eta0)
    : dimension_(dimension),
      vertices_(std::move(vertices)),
      arcs_(std::move(arcs)),
      eta0_(eta0) {
  if (dimension_ < 3) throw std::invalid_argument("ConeNet: dimension must be >= 3");
  if (eta0_ <= 0.0) throw std::invalid_argument("ConeNet: eta0 must be positive");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].position.dimension() != dimension_)
      throw std::invalid_argument("ConeNet: vertex dimension mismatch");
    if (!index_.emplace(vertices_[i].id, i).second)
      throw std::invalid_argument("ConeNet: duplicate vertex id " + vertices_[i].id);
  }
  incident_.resize(vertices_.size());
  std::set<std::string> arc_ids;
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    const Arc& a = arcs_[k];
    if (!arc_ids.insert(a.id).second)
      throw std::invalid_argument("ConeNet: duplicate arc id " + a.id);
    if (a.ends[0] == a.ends[1])
      throw std::invalid_argument("ConeNet: arc with identical endpoints " + a.id);
    for (const auto& e : a.ends) {
      auto it = index_.find(e);
      if (it == index_.end())
        throw std::invalid_argument("ConeNet: arc " + a.id + " references unknown vertex " + e);
      incident_[it->second].push_back(k);
    }
    const double d = sphere::geodesic_distance(vertex(a.ends[0]).position,
                                               vertex(a.ends[1]).position);
    if (d < 1e-9 || d > M_PI - 1e-9)
      throw std::invalid_argument("ConeNet: arc " + a.id + " has coincident or antipodal endpoints");
  }
}

std::size_t ConeNet::vertex_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::invalid_argument("ConeNet: unknown vertex " + id);
  return it->second;
}

const Vertex& ConeNet::vertex(const std::string& id) const {
  return vertices_[vertex_index(id)];
}

const std::vector<std::size_t>& ConeNet::incident_arcs(std::size_t i) const {
  return incident_.at(i);
}

double ConeNet::arc_length(std::size_t k) const {
  const Arc& a = arcs_.at(k);
  return sphere::geodesic_distance(vertex(a.ends[0]).position,
                                   vertex(a.ends[1]).position);
}

ConeNet build_plane(std::size_t n, const UnitVector& e, const UnitVector& f,
                    double eta0) {
  if (e.dimension() != n || f.dimension() != n)
    throw std::invalid_argument("build_plane: frame dimension mismatch");
  if (std::abs(sphere::dot(e.coords(), f.coords())) > 1e-12)
    throw std::invalid_argument("build_plane: frame not orthonormal");
  std::vector<Vertex> vs;
  for (int j = 0; j < 3; ++j) {
    const double th = 2.0 * M_PI * j / 3.0;
    Vec c(n);
    for (std::size_t i = 0; i < n; ++i)
      c[i] = std::cos(th) * e[i] + std::sin(th) * f[i];
    vs.push_back({"v" + std::to_string(j), UnitVector::normalized(std::move(c)),
                  VertexKind::V1});
  }
  std::vector<Arc> as{{"a0", {"v0", "v1"}}, {"a1", {"v1", "v2"}}, {"a2", {"v2", "v0"}}};
  return ConeNet(n, std::move(vs), std::move(as), eta0);
}

ConeNet build_y(std::size_t n, const UnitVector& axis,
                std::optional<UnitVector> orientation, double eta0) {
  if (axis.dimension() != n)
    throw std::invalid_argument("build_y: axis dimension mismatch");
  // Orthonormal pair (e, f) orthogonal to the axis.
  Vec e(n, 0.0);
  if (orientation) {
    if (orientation->dimension() != n ||
        std::abs(sphere::dot(orientation->coords(), axis.coords())) > 1e-12)
      throw std::invalid_argument("build_y: orientation must be a unit vector orthogonal to axis");
    e = orientation->coords();
  } else {
    // Pick the coordinate direction least aligned with the axis.
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(axis[i]) < std::abs(axis[best])) best = i;
    e[best] = 1.0;
    const double c = sphere::dot(e, axis.coords());
    for (std::size_t i = 0; i < n; ++i) e[i] -= c * axis[i];
    const double nz = sphere::norm(e);
    for (auto& x : e) x /= nz;
  }
  Vec f(n, 0.0);
  {
    // Any unit vector orthogonal to both axis and e.
    for (std::size_t cand = 0; cand < n; ++cand) {
      Vec g(n, 0.0);
      g[cand] = 1.0;
      const double ca = sphere::dot(g, axis.coords());
      const double ce = sphere::dot(g, e);
      for (std::size_t i = 0; i < n; ++i) g[i] -= ca * axis[i] + ce * e[i];
      const double nz = sphere::norm(g);
      if (nz > 1e-6) {
        for (auto& x : g) x /= nz;
        f = std::move(g);
        break;
      }
    }
  }
  std::vector<Vertex> vs;
  vs.push_back({"p+", axis, VertexKind::V0});
  Vec minus(n);
  for (std::size_t i = 0; i < n; ++i) minus[i] = -axis[i];
  vs.push_back({"p-", UnitVector(std::move(minus)), VertexKind::V0});
  std::vector<Arc> as;
  for (int j = 0; j < 3; ++j) {
    const double th = 2.0 * M_PI * j / 3.0;
    Vec c(n);
    for (std::size_t i = 0; i < n; ++i)
      c[i] = std::cos(th) * e[i] + std::sin(th) * f[i];
    const std::string mid = "m" + std::to_string(j);
    vs.push_back({mid, UnitVector::normalized(std::move(c)), VertexKind::V1});
    as.push_back({"a" + std::to_string(j) + "+", {"p+", mid}});
    as.push_back({"a" + std::to_string(j) + "-", {mid, "p-"}});
  }
  return ConeNet(n, std::move(vs), std::move(as), eta0);
}

ConeNet build_t(std::size_t n, std::span<const UnitVector> frame, double eta0) {
  if (n < 3) throw std::invalid_argument("build_t: dimension must be >= 3");
  std::vector<Vec> basis;
  if (frame.empty()) {
    for (int i = 0; i < 3; ++i) {
      Vec b(n, 0.0);
      b[i] = 1.0;
      basis.push_back(std::move(b));
    }
  } else {
    if (frame.size() != 3) throw std::invalid_argument("build_t: frame must hold 3 vectors");
    for (const auto& u : frame) {
      if (u.dimension() != n) throw std::invalid_argument("build_t: frame dimension mismatch");
      basis.push_back(u.coords());
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (std::abs(sphere::dot(basis[i], basis[j])) > 1e-12)
          throw std::invalid_argument("build_t: frame not orthonormal");
  }
  const double s = 1.0 / std::sqrt(3.0);
  const double corners[4][3] = {
      {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  std::vector<Vertex> vs;
  for (int k = 0; k < 4; ++k) {
    Vec c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      c[i] = corners[k][0] * basis[0][i] + corners[k][1] * basis[1][i] +
             corners[k][2] * basis[2][i];
    vs.push_back({"v" + std::to_string(k), UnitVector::normalized(std::move(c)),
                  VertexKind::V0});
  }
  std::vector<Arc> as;
  int id = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      as.push_back({"a" + std::to_string(id++),
                    {"v" + std::to_string(i), "v" + std::to_string(j)}});
  return ConeNet(n, std::move(vs), std::move(as), eta0);
}

ConeNet build_union(std::span<const ConeNet> parts) {
  if (parts.empty()) throw std::invalid_argument("build_union: no parts");
  const std::size_t n = parts[0].dimension();
  double eta0 = parts[0].eta0();
  for (const auto& p : parts) {
    if (p.dimension() != n)
      throw std::invalid_argument("build_union: parts live in different ambient dimensions");
    eta0 = std::min(eta0, p.eta0());
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      for (const auto& u : parts[i].vertices())
        for (const auto& v : parts[j].vertices())
          if (std::abs(sphere::dot(u.position.coords(), v.position.coords())) > 1e-9)
            throw std::invalid_argument("build_union: component subspaces overlap");
  std::vector<Vertex> vs;
  std::vector<Arc> as;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::string prefix = "c" + std::to_string(k) + "/";
    for (const auto& v : parts[k].vertices())
      vs.push_back({prefix + v.id, v.position, v.kind});
    for (const auto& a : parts[k].arcs())
      as.push_back({prefix + a.id, {prefix + a.ends[0], prefix + a.ends[1]}});
  }
  return ConeNet(n, std::move(vs), std::move(as), eta0);
}

ConeNet embed(const ConeNet& net, std::size_t n_total, std::size_t offset) {
  if (offset + net.dimension() > n_total)
    throw std::invalid_argument("embed: target dimension too small");
  std::vector<Vertex> vs;
  for (const auto& v : net.vertices()) {
    Vec c(n_total, 0.0);
    for (std::size_t i = 0; i < net.dimension(); ++i) c[offset + i] = v.position[i];
    vs.push_back({v.id, UnitVector(std::move(c)), v.kind});
  }
  return ConeNet(n_total, std::move(vs), net.arcs(), net.eta0());
}

int standard_split_count(double length) {
  if (length <= 0.0) throw std::invalid_argument("standard_split_count: nonpositive length");
  for (int m = 1; m <= 3; ++m)
    if (length / m <= kMaxArc) return m;
  throw std::invalid_argument("standard_split_count: length exceeds 3*(9pi/10)");
}

ConeNet standard_decompose(const ConeNet& net) {
  std::vector<Vertex> vs = net.vertices();
  std::vector<Arc> as;
  for (std::size_t k = 0; k < net.arcs().size(); ++k) {
    const Arc& a = net.arcs()[k];
    const double len = net.arc_length(k);
    if (len < 10.0 * net.eta0())
      throw std::invalid_argument("standard_decompose: eta0 violated by arc " + a.id);
    const int m = standard_split_count(len);
    if (m == 1) {
      as.push_back(a);
      continue;
    }
    const UnitVector& pa = net.vertex(a.ends[0]).position;
    const UnitVector& pb = net.vertex(a.ends[1]).position;
    std::string prev = a.ends[0];
    for (int piece = 1; piece < m; ++piece) {
      const std::string cut = a.id + "#" + std::to_string(piece);
      vs.push_back({cut, sphere::geodesic_point(pa, pb, double(piece) / m),
                    VertexKind::V1});
      as.push_back({a.id + "." + std::to_string(piece - 1), {prev, cut}});
      prev = cut;
    }
    as.push_back({a.id + "." + std::to_string(m - 1), {prev, a.ends[1]}});
  }
  return ConeNet(net.dimension(), std::move(vs), std::move(as), net.eta0());
}

ValidationReport validate_minimal_looking(const ConeNet& net) {
  ValidationReport rep;
  const double eta0 = net.eta0();
  const double angle_tol = tolerances().angle;

  auto issue = [&rep](std::string what, std::string where, double mag) {
    rep.issues.push_back({std::move(what), std::move(where), mag});
    rep.pass = false;
  };

  // (a) arc lengths.
  for (std::size_t k = 0; k < net.arcs().size(); ++k) {
    const double len = net.arc_length(k);
    if (len < 10.0 * eta0)
      issue("arc-length", net.arcs()[k].id, 10.0 * eta0 - len);
  }

  // (d) degrees; done before angles so that malformed junctions are not
  // also reported as angle defects.
  std::vector<bool> degree_ok(net.vertices().size(), true);
  for (std::size_t i = 0; i < net.vertices().size(); ++i) {
    const std::size_t deg = net.incident_arcs(i).size();
    const std::size_t want = net.vertices()[i].kind == VertexKind::V0 ? 3 : 2;
    if (deg != want) {
      issue("degree", net.vertices()[i].id, double(deg) - double(want));
      degree_ok[i] = false;
    }
  }

  // (b) junction angles: 2pi/3 at V0 vertices, pi at V1 vertices.
  for (std::size_t i = 0; i < net.vertices().size(); ++i) {
    if (!degree_ok[i]) continue;
    const Vertex& v = net.vertices()[i];
    std::vector<UnitVector> tangents;
    for (std::size_t k : net.incident_arcs(i)) {
      const Arc& a = net.arcs()[k];
      const std::string& other = a.ends[0] == v.id ? a.ends[1] : a.ends[0];
      tangents.push_back(sphere::tangent_at(v.position, net.vertex(other).position));
    }
    double worst = 0.0;
    for (std::size_t p = 0; p < tangents.size(); ++p)
      for (std::size_t q = p + 1; q < tangents.size(); ++q) {
        if (v.kind == VertexKind::V1) {
          // pi - angle computed as 2 asin(|t1+t2|/2): acos near -1 would
          // lose half the digits on exact straight junctions.
          double s = 0.0;
          for (std::size_t d = 0; d < net.dimension(); ++d) {
            const double c = tangents[p][d] + tangents[q][d];
            s += c * c;
          }
          worst = std::max(worst, 2.0 * std::asin(std::min(std::sqrt(s) / 2.0, 1.0)));
        } else {
          const double ang = std::acos(std::clamp(
              sphere::dot(tangents[p].coords(), tangents[q].coords()), -1.0, 1.0));
          worst = std::max(worst, std::abs(ang - 2.0 * M_PI / 3.0));
        }
      }
    if (worst > angle_tol) issue("angle", v.id, worst);
  }

  // (c) separation of arcs without a common endpoint, by sampling one arc
  // and using the exact point-to-arc distance on the other.
  const double step = std::min(0.01, eta0 / 4.0);
  for (std::size_t i = 0; i < net.arcs().size(); ++i) {
    for (std::size_t j = i + 1; j < net.arcs().size(); ++j) {
      const Arc& ai = net.arcs()[i];
      const Arc& aj = net.arcs()[j];
      std::string shared;
      for (const auto& e : ai.ends)
        if (e == aj.ends[0] || e == aj.ends[1]) shared = e;

      const UnitVector& a0 = net.vertex(ai.ends[0]).position;
      const UnitVector& a1 = net.vertex(ai.ends[1]).position;
      const UnitVector& b0 = net.vertex(aj.ends[0]).position;
      const UnitVector& b1 = net.vertex(aj.ends[1]).position;
      const double len = sphere::geodesic_distance(a0, a1);
      const int samples = std::max(2, int(std::ceil(len / step)) + 1);

      double min_dist = std::numeric_limits<double>::infinity();
      double ball_defect = 0.0;
      for (int s = 0; s <= samples; ++s) {
        const double t = double(s) / samples;
        UnitVector x = t == 0.0 ? a0 : (t == 1.0 ? a1 : sphere::geodesic_point(a0, a1, t));
        const double d = distance_to_arc(x.coords(), b0, b1);
        min_dist = std::min(min_dist, d);
        if (!shared.empty() && d <= eta0) {
          // Common-endpoint-in-ball form: the shared vertex must realize
          // the distance from x to the other arc (up to sampling slack).
          const double dw = chord(x, net.vertex(shared).position);
          ball_defect = std::max(ball_defect, dw - d);
        }
      }
      if (shared.empty()) {
        if (min_dist < eta0 - step)
          issue("separation", ai.id + "," + aj.id, eta0 - min_dist);
        if (min_dist < eta0)
          rep.ball_condition_issues.push_back(
              {"ball-condition", ai.id + "," + aj.id, eta0 - min_dist});
      } else if (ball_defect > step) {
        rep.ball_condition_issues.push_back(
            {"ball-condition", ai.id + "," + aj.id, ball_defect});
      }
    }
  }
  return rep;
}

VertexMap::VertexMap(std::map<std::string, UnitVector> entries, double eta1)
    : entries_(std::move(entries)), eta1_(eta1) {
  if (eta1_ <= 0.0) throw std::invalid_argument("VertexMap: eta1 must be positive");
}

VertexMap VertexMap::identity(const ConeNet& net, double eta1) {
  std::map<std::string, UnitVector> m;
  for (const auto& v : net.vertices()) m.emplace(v.id, v.position);
  return VertexMap(std::move(m), eta1);
}

const UnitVector& VertexMap::at(const std::string& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw std::invalid_argument("VertexMap: missing vertex " + id);
  return it->second;
}

bool VertexMap::covers(const ConeNet& net) const {
  for (const auto& v : net.vertices())
    if (entries_.find(v.id) == entries_.end()) return false;
  return true;
}

VertexMap VertexMap::with(const std::string& id, UnitVector p) const {
  auto m = entries_;
  m.insert_or_assign(id, std::move(p));
  return VertexMap(std::move(m), eta1_);
}

ConeNet apply_vertex_map(const ConeNet& net, const VertexMap& phi) {
  if (!phi.covers(net))
    throw std::invalid_argument("apply_vertex_map: phi does not cover all vertices");
  std::vector<Vertex> vs;
  for (const auto& v : net.vertices()) {
    const UnitVector& p = phi.at(v.id);
    if (p.dimension() != net.dimension())
      throw std::invalid_argument("apply_vertex_map: image dimension mismatch");
    if (chord(v.position, p) > phi.eta1() * (1.0 + 1e-12))
      throw std::invalid_argument("apply_vertex_map: vertex " + v.id + " moved beyond eta1");
    vs.push_back({v.id, p, v.kind});
  }
  return ConeNet(net.dimension(), std::move(vs), net.arcs(), net.eta0());
}

double net_length(const ConeNet& net) {
  double total = 0.0;
  for (std::size_t k = 0; k < net.arcs().size(); ++k) total += net.arc_length(k);
  return total;
}

double net_density(const ConeNet& net) { return 0.5 * net_length(net); }

std::vector<ConeNet> connected_components(const ConeNet& net) {
  const std::size_t nv = net.vertices().size();
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& a : net.arcs()) {
    const std::size_t u = find(net.vertex_index(a.ends[0]));
    const std::size_t v = find(net.vertex_index(a.ends[1]));
    parent[u] = v;
  }
  std::map<std::size_t, std::size_t> roots;
  for (std::size_t i = 0; i < nv; ++i) {
    const std::size_t r = find(i);
    roots.emplace(r, roots.size());
  }
  std::vector<std::vector<Vertex>> vs(roots.size());
  std::vector<std::vector<Arc>> as(roots.size());
  for (std::size_t i = 0; i < nv; ++i)
    vs[roots[find(i)]].push_back(net.vertices()[i]);
  for (const auto& a : net.arcs())
    as[roots[find(net.vertex_index(a.ends[0]))]].push_back(a);
  std::vector<ConeNet> out;
  for (std::size_t c = 0; c < roots.size(); ++c)
    out.emplace_back(net.dimension(), std::move(vs[c]), std::move(as[c]), net.eta0());
  return out;
}

double distance_to_cone(const ConeNet& net, std::span<const double> p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : net.arcs())
    best = std::min(best, distance_to_sector(p, net.vertex(a.ends[0]).position,
                                             net.vertex(a.ends[1]).position));
  return best;
}

namespace {

// One-sided term of (the normalized distance): sup over cone(src) within
// B(center, r) of the distance to cone(dst), divided by r. Uses the
// homogeneity of the distance-to-cone function: along a ray the supremum
// sits at the largest admissible radius.
double one_sided(const ConeNet& src, const ConeNet& dst,
                 std::span<const double> center, double r, double step) {
  const double c2 = sphere::dot(center, center);
  double sup = 0.0;
  bool any = false;
  for (const auto& a : src.arcs()) {
    const UnitVector& p0 = src.vertex(a.ends[0]).position;
    const UnitVector& p1 = src.vertex(a.ends[1]).position;
    const double len = sphere::geodesic_distance(p0, p1);
    const int m = std::max(1, int(std::ceil(len / step)));
    for (int s = 0; s <= m; ++s) {
      const double t = double(s) / m;
      UnitVector q = t == 0.0 ? p0 : (t == 1.0 ? p1 : sphere::geodesic_point(p0, p1, t));
      // Largest rho >= 0 with |rho q - center| <= r.
      const double qc = sphere::dot(q.coords(), center);
      const double disc = qc * qc - (c2 - r * r);
      if (disc < 0.0) continue;
      const double rho = qc + std::sqrt(disc);
      if (rho < 0.0) continue;
      any = true;
      sup = std::max(sup, rho * distance_to_cone(dst, q.coords()));
    }
  }
  return any ? sup / r : 0.0;  // empty intersection contributes 0 by convention
}

}  // namespace

double normalized_hausdorff_distance(const ConeNet& a, const ConeNet& b,
                                     std::span<const double> center, double r,
                                     double step_factor) {
  if (r <= 0.0) throw std::invalid_argument("normalized_hausdorff_distance: r must be positive");
  if (center.size() != a.dimension() || a.dimension() != b.dimension())
    throw std::invalid_argument("normalized_hausdorff_distance: dimension mismatch");
  const double step = step_factor > 0.0 ? step_factor : tolerances().hausdorff_step;
  return one_sided(a, b, center, r, step) + one_sided(b, a, center, r, step);
}

}  // namespace conelab::net
