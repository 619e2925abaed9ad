#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conelab/harmonic.hpp"
#include "conelab/sphere.hpp"

namespace conelab::curve {

// A near-geodesic simple curve on the sphere, resampled to a uniform
// arc-length grid and decomposed against a reference 2-plane P as
// z(t) = (cos theta(t) w(t), sin theta(t) w(t), v(t)).
struct SphericalCurve {
  std::size_t dimension = 0;
  double step = 0.0;   // grid spacing
  double length = 0.0;  // l = |I|
  double dist_ab = 0.0;  // geodesic distance of the endpoints
  double tau1 = 0.0;
  std::vector<sphere::UnitVector> z;          // grid samples, in P-adapted frame
  std::vector<double> theta;                  // continuous determination
  std::vector<std::vector<double>> v;         // components off P, dim n-2
  std::vector<double> w;                      // (1 - |v|^2)^{1/2}
  bool reversed = false;                      // input orientation was flipped

  double delta_l() const { return length - dist_ab; }
};

// Builds the arc-length parameterization. `plane` holds two orthonormal
// vectors spanning P; the endpoints must lie in P. Verifies the curve
// hypotheses (length window, near-geodesic within tau1, distance to P within
// tau1) and errors naming the failed inequality. Orientation is fixed so the
// winding of theta is +dist(a,b).
SphericalCurve parameterize(std::span<const sphere::UnitVector> polyline,
                            const sphere::UnitVector& plane_u,
                            const sphere::UnitVector& plane_v, double tau1,
                            double max_step = 1e-4, double eta0 = 0.01);

struct EnergyReport {
  double dirichlet_v = 0.0;  // int |v'|^2
  double integral_f = 0.0;   // int (1 + 2|v|^2 - theta')
  double delta_l = 0.0;
  double margin_v = 0.0;  // 14 delta_l - dirichlet_v
  double margin_f = 0.0;  // 30 delta_l - integral_f
  double min_f = 0.0;
};

EnergyReport energy_diagnostics(const SphericalCurve& c);

// Exact discrete noncentered Hardy-Littlewood maximal function of cell
// values g >= 0 on a uniform grid: at each cell, the sup over all cell
// intervals containing it of the interval average. O(M^2).
std::vector<double> noncentered_maximal(std::span<const double> g);

// Cells where the maximal function exceeds lambda, as half-open cell runs
// [first, last). O(M) via prefix extrema: max-average > lambda at cell i iff
// max_{q > i} H_q > min_{p <= i} H_p for H = prefix sums of g - lambda.
std::vector<std::pair<std::size_t, std::size_t>> maximal_superlevel(
    std::span<const double> g, double lambda);

struct StraightenResult {
  SphericalCurve gamma;                                  // the output curve
  std::vector<std::pair<std::size_t, std::size_t>> bad;  // grid-point index runs
  double bad_measure = 0.0;                              // |Z| in parameter length
  double removed_length = 0.0;                           // H1(gamma_in \ Gamma)
  double added_length = 0.0;                             // H1(Gamma \ gamma_in)
  double delta_l = 0.0;
  double lipschitz_margin = 0.0;  // min over cells of (4eta/5) dtheta - |dv|
  double min_dtheta = 0.0;        // strict increase certificate
  double c_hat = 0.0;             // |Z| * eta^2 / delta_l when delta_l > 0
};

// Replaces the curve on {v* > eta/4} union {f* > 1/2} by geodesic arcs with
// the same component endpoints. The result keeps the input grid; on replaced
// components theta is affine and v follows the geodesic.
StraightenResult straighten(const SphericalCurve& c, double eta);

// Reparameterizes the straightened curve by its angle theta, yielding
// admissible boundary data for the sector replacement (aperture d, samples
// of v on a uniform theta grid).
harmonic::SectorProfile to_sector_profile(const StraightenResult& r,
                                          double eta, std::size_t samples = 0);

std::string straighten_json(const StraightenResult& r);

// Curve I/O: CSV rows of sphere point coordinates, or JSON
// {"points": [[...], ...]}.
std::vector<sphere::UnitVector> curve_from_csv(const std::string& text);
std::vector<sphere::UnitVector> curve_from_json(const std::string& text);

}  // namespace conelab::curve
