#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conelab/sphere.hpp"

namespace conelab::net {

enum class VertexKind { V0, V1 };

struct Vertex {
  std::string id;
  sphere::UnitVector position;
  VertexKind kind;
};

struct Arc {
  std::string id;
  std::array<std::string, 2> ends;
};

// The trace K = X cap dB of a two-dimensional cone X, stored as a geodesic
// net: vertices on the sphere plus minimizing arcs between them. The cone
// itself is implicit (cone over the net). Values are immutable after
// construction; all operations below return new nets.
class ConeNet {
 public:
  ConeNet(std::size_t dimension, std::vector<Vertex> vertices,
          std::vector<Arc> arcs, double eta0);

  std::size_t dimension() const { return dimension_; }
  double eta0() const { return eta0_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::size_t vertex_index(const std::string& id) const;
  const Vertex& vertex(const std::string& id) const;
  // Arcs incident to a vertex, as indices into arcs().
  const std::vector<std::size_t>& incident_arcs(std::size_t vertex_index) const;

  double arc_length(std::size_t arc_index) const;

 private:
  std::size_t dimension_;
  std::vector<Vertex> vertices_;
  std::vector<Arc> arcs_;
  double eta0_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> incident_;
};

// Great circle in the 2-plane spanned by an orthonormal frame, split at
// three equally spaced V1 vertices (arcs of 2pi/3 each).
ConeNet build_plane(std::size_t n, const sphere::UnitVector& e,
                    const sphere::UnitVector& f, double eta0 = 0.01);

// Three half great circles from +axis to -axis at mutual 120-degree angles,
// each split at its equator midpoint (5 vertices, 6 arcs of pi/2).
// `orientation`, when given, is a unit vector orthogonal to the axis fixing
// the direction of the first arm's midpoint.
ConeNet build_y(std::size_t n, const sphere::UnitVector& axis,
                std::optional<sphere::UnitVector> orientation = std::nullopt,
                double eta0 = 0.01);

// Trace of the cone over the edges of a regular tetrahedron: 4 V0 vertices,
// 6 arcs of length arccos(-1/3). `frame`, when given, holds three orthonormal
// vectors of R^n carrying the canonical 3-space placement.
ConeNet build_t(std::size_t n,
                std::span<const sphere::UnitVector> frame = {},
                double eta0 = 0.01);

// Disjoint union of nets living in the same R^n whose linear spans are
// pairwise orthogonal. Vertex/arc ids get "c<k>/" prefixes.
ConeNet build_union(std::span<const ConeNet> parts);

// Re-embeds into R^{n_total} with coordinates shifted by `offset`.
ConeNet embed(const ConeNet& net, std::size_t n_total, std::size_t offset);

// Minimal number of equal pieces (1, 2 or 3) cutting `length` so that each
// piece is at most 9pi/10.
int standard_split_count(double length);

// Cuts every arc longer than 9pi/10 into the minimal number of equal
// sub-arcs; cut points become V1 vertices; the point set and total length
// are unchanged. Errors if an arc shorter than 10*eta0 is already present.
ConeNet standard_decompose(const ConeNet& net);

struct ValidationIssue {
  std::string what;   // which check: "arc-length", "angle", "separation", ...
  std::string where;  // vertex/arc id(s)
  double magnitude;   // size of the violation
};

struct ValidationReport {
  bool pass = true;
  std::vector<ValidationIssue> issues;
  // The stronger common-endpoint-in-ball form of arc proximity is checked
  // separately and reported here without affecting `pass`.
  std::vector<ValidationIssue> ball_condition_issues;
};

// Checks the structural description of a minimal-looking cone: arc lengths
// >= 10*eta0, 120-degree V0 junctions and straight V1 junctions, eta0
// separation of arcs without a common endpoint (dense sampling), and vertex
// degrees (no free endpoints).
ValidationReport validate_minimal_looking(const ConeNet& net);

// A perturbation phi in Phi(eta1): each vertex is sent to a nearby point of
// the sphere, with |phi(x) - x| <= eta1 in chord norm.
class VertexMap {
 public:
  VertexMap(std::map<std::string, sphere::UnitVector> entries, double eta1);

  static VertexMap identity(const ConeNet& net, double eta1);

  double eta1() const { return eta1_; }
  const sphere::UnitVector& at(const std::string& id) const;
  bool covers(const ConeNet& net) const;
  // Replaces the image of a single vertex (returns a new map).
  VertexMap with(const std::string& id, sphere::UnitVector p) const;

 private:
  std::map<std::string, sphere::UnitVector> entries_;
  double eta1_;
};

// phi_*(K): same combinatorics, every arc replaced by the geodesic between
// the mapped endpoints. Errors if phi misses a vertex, moves one further
// than eta1, or makes an arc degenerate.
ConeNet apply_vertex_map(const ConeNet& net, const VertexMap& phi);

double net_length(const ConeNet& net);
double net_density(const ConeNet& net);

std::vector<ConeNet> connected_components(const ConeNet& net);

// Normalized bilateral distance between the cones over two nets, restricted
// to B(center, r): r^{-1} sup_{y in B cap cone(b)} dist(y, cone(a)) plus the
// symmetric term. Distances to a cone are exact (sector formula); the sups
// are approximated by sampling with step `step_factor * r` of arc length.
double normalized_hausdorff_distance(const ConeNet& a, const ConeNet& b,
                                     std::span<const double> center, double r,
                                     double step_factor = 0.0);

// Exact Euclidean distance from a point to the infinite cone over the net.
double distance_to_cone(const ConeNet& net, std::span<const double> p);

}  // namespace conelab::net
