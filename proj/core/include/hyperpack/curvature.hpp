#pragma once

// Metric-level quantities across a triangulation: per-edge lengths, per-edge
// Ricci curvature (angle defect), per-vertex scalar curvature, the curvature
// Hessian dK/dr, and eigenvalue-based rigidity certificates.

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperpack/complex.hpp"
#include "hyperpack/trunctet.hpp"

namespace hyperpack {

// Immutable bundle of a triangulation with per-edge weights (radians) and
// per-vertex radii, plus caches derived from them. Build via make_state.
struct MetricState {
  std::shared_ptr<const Triangulation> tri;
  std::vector<double> weights;  // per edge
  std::vector<double> radii;    // per vertex

  std::vector<double> lengths;        // per edge; NaN where nonexistent
  std::vector<bool> lengths_ok;       // per edge
  std::vector<bool> tet_nondegenerate;  // per tet: lengths exist and Q2 > eps
  bool admissible = false;            // every edge length exists, every tet nondegenerate
  bool rigidity_tier = false;         // every weight <= arccos(1/3)

  TetWeights tet_weights(int tet_id) const;
  TetRadii tet_radii(int tet_id) const;
  TetLengths tet_lengths(int tet_id) const;  // throws InadmissibleState if absent
};

// Validates sizes and ranges (throws ValidationError / DomainError), then
// computes the caches. The triangulation must already validate.
MetricState make_state(std::shared_ptr<const Triangulation> tri,
                       std::vector<double> weights_radians,
                       std::vector<double> radii);

// Convenience: ids of the tets that fail nondegeneracy (empty iff admissible).
std::vector<int> inadmissible_tets(const MetricState& state);

struct CurvatureReport {
  std::vector<double> edge_ricci;     // K_e = 2 pi - sum of dihedral angles over the star
  std::vector<double> vertex_scalar;  // K_v = sum over edge ends at v of K_e cosh(theta)
};

// Throw InadmissibleState (listing tets) unless state.admissible.
std::vector<double> ricci_curvature(const MetricState& state);
std::vector<double> scalar_curvature(const MetricState& state);
CurvatureReport curvature_report(const MetricState& state);

// Jacobian d(scalar curvature)/d(radii), assembled per tet as
// -(dl/dr) (dbeta/dl) (dl/dr)^T scattered through the corner-to-vertex map,
// plus per edge K_e * hess_edge_length scattered into its endpoint block.
// Symmetric; equals Hess of the curvature potential.
Eigen::MatrixXd hess_G(const MetricState& state);

// First assembly term only: the Hessian relevant to curvature-difference
// functionals, negative definite on admissible states.
Eigen::MatrixXd ricci_mode_hessian(const MetricState& state);

enum class CertificateMode { scalar, ricci };

struct Certificate {
  CertificateMode mode = CertificateMode::scalar;
  bool weight_tier_ok = false;      // all weights <= arccos(1/3)
  bool curvature_sign_ok = false;   // all K_e sin^2(phi_e) >= 0
  std::vector<int> violating_edges; // edges failing the sign condition
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double tolerance = 0.0;           // certified needs lambda_max < -tolerance
  bool certified = false;
};

// Scalar mode gates on the weight tier and the per-edge sign condition, then
// certifies lambda_max(hess_G) < -tol*(1 + |lambda_min|). Ricci mode gates on
// the weight tier only and certifies the same bound for ricci_mode_hessian.
// Gate failures throw HypothesisFailed naming the violating edges; an
// eigenvalue bound failure returns certified = false.
Certificate rigidity_certificate(const MetricState& state, CertificateMode mode,
                                 double tol = 1e-9);

std::string certificate_mode_name(CertificateMode mode);

}  // namespace hyperpack
