#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conelab/cone_net.hpp"

namespace conelab::perturb {

// Angle deviation at a vertex of phi_*(K): |w1+w2+w3| over the unit
// tangents at a V0 vertex, pi minus the tangent angle at a V1 vertex.
double vertex_deviation(const net::ConeNet& net, const net::VertexMap& phi,
                        const std::string& vertex_id);

// sup over vertices of the deviation.
double alpha_plus(const net::ConeNet& net, const net::VertexMap& phi);

struct DeviationReport {
  std::vector<std::pair<std::string, double>> per_vertex;
  double alpha_plus = 0.0;
  double length_delta = 0.0;           // H1(phi_*(K)) - H1(K)
  std::optional<double> ratio;         // length_delta / alpha_plus^2
};

DeviationReport deviation_report(const net::ConeNet& net,
                                 const net::VertexMap& phi);

// Smooth bump used by the push deformation f(z) = z + psi(z1, rho) v:
// tensor product of C^1 smoothstep profiles, supported in
// [1/4,1/2] x [0, eta0/10], with psi(z1,0) = 1 on [0.26,0.46] and
// d(psi)/d(rho) <= 0 everywhere.
struct Bump {
  explicit Bump(double eta0);
  double height;        // rho support
  double plateau_mass;  // integral of psi(z1, 0) dz1 (the constant `a`)
  double value(double z1, double rho) const;
  double d_z1(double z1, double rho) const;
  double d_rho(double z1, double rho) const;
  double grad_sup() const;
  // Gradient kink lines of the longitudinal profile; quadrature panels
  // should align with them.
  static std::array<double, 4> z1_breaks() { return {0.25, 0.26, 0.46, 0.5}; }
};

struct PushResult {
  double gain;        // H2 before minus H2 after, over the moved faces
  double s_norm;      // |w1+w2(+w3)| at the chosen vertex
  double quad_error;  // accumulated quadrature error estimate
  double bump_mass;   // the face integral `a` of -d(psi)/d(rho)
};

// Area gained by pushing the faces of the cone at phi(x) along v = c*s,
// computed by quadrature of the exact face Jacobian. The guaranteed regime
// is c * |grad psi|-type constants small (the gain contract
// gain >= (c/10)|s|^2 holds there); larger c is computed faithfully but not
// guaranteed.
PushResult push_deformation_area_gain(const net::ConeNet& net,
                                      const net::VertexMap& phi,
                                      const std::string& vertex_id, double c);

struct CertificateOptions {
  double eta1 = 0.05;
  std::size_t budget = 100000;
  std::uint64_t seed = 1;
  double stability = 0.25;       // relative agreement required under doubling
  double gradient_bound = 1e-8;  // critical-point check threshold
  bool keep_rows = false;        // retain the per-sample CSV rows
};

struct SampleRow {
  std::size_t id;
  double alpha_plus;
  double length_delta;
  std::optional<double> ratio;
};

struct Certificate {
  std::string component;
  bool pass = false;
  double c_hat = 0.0;       // sup ratio over budget 2B
  double c_hat_base = 0.0;  // sup ratio over the first B samples
  double gradient_norm = 0.0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  double eta1 = 0.0;
  bool eta1_within_paper_range = true;  // eta1 < eta0 / 10
  std::size_t lengthening_samples = 0;  // samples with positive length delta
  std::size_t ratio_samples = 0;
  std::size_t worst_sample = 0;
  std::vector<SampleRow> rows;
};

// Samples phi in Phi(eta1) (alternating isotropic Gaussian displacements of
// all vertices and structured one-vertex families), keeps the lengthening
// samples, and reports the sup of length_delta / alpha_plus^2 together with
// its stability under doubling the budget and the critical-point check on
// the unperturbed net.
Certificate full_length_certificate(const net::ConeNet& net,
                                    const CertificateOptions& options = {});

// Runs the certificate on every connected component; the union certificate
// passes iff every component passes and carries the max of the constants.
std::vector<Certificate> componentwise_certificate(
    const net::ConeNet& net, const CertificateOptions& options = {});

// Norm of the finite-difference gradient of net_length over all vertex
// tangent directions (central differences, step 1e-6).
double length_gradient_norm(const net::ConeNet& net, double step = 1e-6);

std::string certificate_csv(const Certificate& c);
std::string certificate_json(const Certificate& c);

}  // namespace conelab::perturb
