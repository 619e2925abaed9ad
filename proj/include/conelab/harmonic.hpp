#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "conelab/quadrature.hpp"

namespace conelab::harmonic {

// Boundary data for a graph over the planar sector of aperture T: a sampled
// map v : [0,T] -> R^d (uniform grid, d = n-2 >= 1) with v(0) = v(T) = 0 and
// discrete Lipschitz constant at most eta. Values within 1e-12 of zero at
// the ends are snapped to exact zero on construction.
struct SectorProfile {
  double T;
  std::size_t codim;
  std::vector<std::vector<double>> v;  // (M+1) samples of dimension codim
  double eta;

  SectorProfile(double T, std::vector<std::vector<double>> samples, double eta,
                double eta0 = 0.01);

  std::size_t intervals() const { return v.size() - 1; }
  double dt() const { return T / double(intervals()); }
  double discrete_lipschitz() const;
  // Midpoint-rule integral of |v'|^2 from the grid.
  double dirichlet_v() const;
  // length(Gamma) via |z'|^2 = w^2 + w'^2 + |v'|^2 on the grid.
  double gamma_length() const;
};

// f = v / sqrt(1 - |v|^2) on the grid; errors if |v| reaches 1.
std::vector<std::vector<double>> boundary_function(const SectorProfile& p);

struct FourierSineSeries {
  double T = 0.0;
  std::size_t codim = 0;
  std::vector<std::vector<double>> beta;  // K coefficient vectors
  double parseval_residual = 0.0;         // spectral vs discrete f' energy
  double reconstruction_error = 0.0;      // max grid defect of the partial sum

  std::size_t modes() const { return beta.size(); }
};

// beta_k = (2/T) integral of f(t) sin(pi k t / T), composite trapezoid on the
// grid (exact for grid-band-limited data). K above the grid Nyquist is an
// error.
FourierSineSeries sine_expand(const std::vector<std::vector<double>>& f,
                              double T, std::size_t K);

// Dirichlet energy of the homogeneous graph F over the unit sector,
// (T/4) sum (1 + (pi k/T)^2)|beta_k|^2.
double cone_energy(const FourierSineSeries& s);
double cone_energy(const SectorProfile& p, std::size_t K = 0);

// Dirichlet energy of the harmonic extension G1, (pi/2) sum k |beta_k|^2.
double harmonic_energy(const FourierSineSeries& s);

// Same quantity by 2-D quadrature of |grad G1|^2 (cross-check route).
double harmonic_energy_quadrature(const FourierSineSeries& s,
                                  double* err = nullptr);
// And for F.
double cone_energy_quadrature(const FourierSineSeries& s,
                              double* err = nullptr);

// The replacement graph G over the closed sector: F outside B(0,9/10), the
// scaled harmonic extension in the middle (with a thin linear interpolation
// ring at r_interp = 1 - 1e-6), a linear collar on 2kappa <= r <= 3kappa,
// and 0 in the core.
class ReplacementGraph {
 public:
  ReplacementGraph(const SectorProfile& p, double kappa, std::size_t modes);

  double T() const { return series_.T; }
  std::size_t codim() const { return series_.codim; }
  double kappa() const { return kappa_; }
  double r_interp() const { return r_interp_; }
  const FourierSineSeries& series() const { return series_; }

  // G and its Cartesian gradient columns (each of dimension codim).
  void value(double rho, double t, double* out) const;
  void gradient(double rho, double t, double* v1, double* v2) const;

  // Largest |grad G| (Frobenius) seen on a diagnostic grid.
  double lipschitz_estimate() const { return lipschitz_; }
  double continuity_defect() const { return continuity_defect_; }
  double boundary_defect() const { return boundary_defect_; }

  // Radial seam locations, for quadrature panels.
  std::vector<double> seams() const;

 private:
  void g1_eval(double rho, double t, double* val, double* d_rho,
               double* d_tan) const;  // any pointer may be null
  void polar_gradient(double rho, double t, double* d_rho, double* d_tan) const;

  FourierSineSeries series_;
  double kappa_;
  double r_interp_;
  double lipschitz_ = 0.0;
  double continuity_defect_ = 0.0;
  double boundary_defect_ = 0.0;
};

ReplacementGraph build_replacement(const SectorProfile& p, double kappa = 0.01,
                                   std::size_t modes = 0);

struct AreaResult {
  double value = 0.0;
  double error = 0.0;
};

// Area of the graph of F over the sub-sector r0 <= r <= r1 (1-D quadrature;
// the integrand is radially constant by homogeneity).
AreaResult cone_graph_area(const FourierSineSeries& s, double r0, double r1);

// Area of the replacement graph over the sub-sector.
AreaResult graph_area(const ReplacementGraph& g, double r0, double r1);

// Dirichlet energy of G over the sub-sector (for the annulus/collar audits).
AreaResult dirichlet_energy(const ReplacementGraph& g, double r0, double r1);

struct SavingReport {
  double saving = 0.0;
  double lower_bound = 0.0;
  double quad_error = 0.0;
  double dirichlet_v = 0.0;
  double gamma_length = 0.0;
  double cone_energy = 0.0;
  double harmonic_energy = 0.0;
  double ratio = 0.0;  // harmonic / cone
  double parseval_residual = 0.0;
  double lipschitz_estimate = 0.0;
  double collar_energy = 0.0;  // Dirichlet energy inside B(0, 3 kappa)
  bool pass = false;           // saving >= lower_bound - quad_error
};

// Lemma-8.8 check: area of Sigma_F minus area of Sigma_G over the sector
// within B(0, 9/10), against 1e-4 * max(int |v'|^2, length(Gamma) - T).
SavingReport area_saving(const SectorProfile& p, double kappa = 0.01,
                         std::size_t modes = 0, double eta_max = 0.05);

std::string saving_json(const SavingReport& r);

// Profile I/O: CSV rows "t,v1,...,vd" on a uniform grid, or JSON
// {"T": ..., "eta": ..., "v": [[...], ...]}.
SectorProfile profile_from_csv(const std::string& text, double eta);
SectorProfile profile_from_json(const std::string& text);
std::string profile_to_csv(const SectorProfile& p);

}  // namespace conelab::harmonic
