#include "hyperpack/curvature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperpack/errors.hpp"
#include "hyperpack/hyptrig.hpp"

namespace hyperpack {

namespace {

constexpr double kTierMinCosine = 1.0 / 3.0;

void require_admissible(const MetricState& state) {
  if (state.admissible) return;
  const std::vector<int> bad = inadmissible_tets(state);
  throw InadmissibleState("metric state is inadmissible (" +
                              std::to_string(bad.size()) + " degenerate tet(s))",
                          bad);
}

void check_tet_id(const MetricState& state, int tet_id) {
  if (tet_id < 0 || tet_id >= static_cast<int>(state.tri->tets.size())) {
    throw UnknownId("no tet with id " + std::to_string(tet_id));
  }
}

}  // namespace

TetWeights MetricState::tet_weights(int tet_id) const {
  check_tet_id(*this, tet_id);
  TetWeights w;
  for (int s = 0; s < 6; ++s) {
    w.cosines[s] = std::cos(weights[tri->tets[tet_id].edge_refs[s]]);
  }
  return w;
}

TetRadii MetricState::tet_radii(int tet_id) const {
  check_tet_id(*this, tet_id);
  TetRadii r;
  for (int p = 0; p < 4; ++p) {
    r.r[p] = radii[tri->tets[tet_id].vertices[p]];
  }
  return r;
}

TetLengths MetricState::tet_lengths(int tet_id) const {
  check_tet_id(*this, tet_id);
  TetLengths out;
  for (int s = 0; s < 6; ++s) {
    const int eid = tri->tets[tet_id].edge_refs[s];
    if (!lengths_ok[eid]) {
      throw InadmissibleState("tet " + std::to_string(tet_id) +
                                  " has no length at edge " + std::to_string(eid),
                              {tet_id});
    }
    out.l[s] = lengths[eid];
  }
  return out;
}

MetricState make_state(std::shared_ptr<const Triangulation> tri,
                       std::vector<double> weights_radians, std::vector<double> radii) {
  if (!tri) {
    throw ValidationError("triangulation must not be null");
  }
  validate_triangulation(*tri);
  if (weights_radians.size() != tri->edges.size()) {
    throw ValidationError("expected " + std::to_string(tri->edges.size()) +
                          " weights, got " + std::to_string(weights_radians.size()));
  }
  if (radii.size() != static_cast<std::size_t>(tri->vertex_count)) {
    throw ValidationError("expected " + std::to_string(tri->vertex_count) +
                          " radii, got " + std::to_string(radii.size()));
  }
  constexpr double kHalfPi = 1.5707963267948966;
  for (std::size_t e = 0; e < weights_radians.size(); ++e) {
    const double w = weights_radians[e];
    if (!(w >= 0.0) || !(w <= kHalfPi + kEpsGeom)) {
      throw DomainError("weight at edge " + std::to_string(e) +
                        " must lie in [0, pi/2], got " + std::to_string(w));
    }
  }
  for (std::size_t v = 0; v < radii.size(); ++v) {
    if (!(radii[v] > 0.0) || !(radii[v] <= kMaxRadius)) {
      throw DomainError("radius at vertex " + std::to_string(v) +
                        " must lie in (0, 50], got " + std::to_string(radii[v]));
    }
  }

  MetricState st;
  st.tri = std::move(tri);
  st.weights = std::move(weights_radians);
  st.radii = std::move(radii);

  const std::size_t edge_count = st.tri->edges.size();
  st.lengths.assign(edge_count, std::numeric_limits<double>::quiet_NaN());
  st.lengths_ok.assign(edge_count, false);
  for (std::size_t e = 0; e < edge_count; ++e) {
    const EdgeRecord& rec = st.tri->edges[e];
    if (pentagon_edge_exists(st.radii[rec.v], st.radii[rec.w], st.weights[e])) {
      st.lengths[e] = pentagon_edge_length(st.radii[rec.v], st.radii[rec.w], st.weights[e]);
      st.lengths_ok[e] = true;
    }
  }

  st.tet_nondegenerate.assign(st.tri->tets.size(), false);
  bool all_ok = true;
  for (std::size_t tid = 0; tid < st.tri->tets.size(); ++tid) {
    bool slots_ok = true;
    for (int s = 0; s < 6; ++s) {
      if (!st.lengths_ok[st.tri->tets[tid].edge_refs[s]]) slots_ok = false;
    }
    const bool ok =
        slots_ok && is_nondegenerate(st.tet_radii(static_cast<int>(tid)),
                                     st.tet_weights(static_cast<int>(tid)));
    st.tet_nondegenerate[tid] = ok;
    all_ok = all_ok && ok;
  }
  for (bool ok : st.lengths_ok) all_ok = all_ok && ok;
  st.admissible = all_ok;

  st.rigidity_tier = true;
  for (double w : st.weights) {
    if (std::cos(w) < kTierMinCosine - kEpsGeom) st.rigidity_tier = false;
  }
  return st;
}

std::vector<int> inadmissible_tets(const MetricState& state) {
  std::vector<int> bad;
  for (std::size_t tid = 0; tid < state.tet_nondegenerate.size(); ++tid) {
    if (!state.tet_nondegenerate[tid]) bad.push_back(static_cast<int>(tid));
  }
  return bad;
}

std::vector<double> ricci_curvature(const MetricState& state) {
  require_admissible(state);
  std::vector<double> k(state.tri->edges.size(), 2.0 * std::numbers::pi);
  for (std::size_t tid = 0; tid < state.tri->tets.size(); ++tid) {
    const auto beta = dihedral_angles(state.tet_lengths(static_cast<int>(tid)));
    for (int s = 0; s < 6; ++s) {
      k[state.tri->tets[tid].edge_refs[s]] -= beta[s];
    }
  }
  return k;
}

std::vector<double> scalar_curvature(const MetricState& state) {
  return curvature_report(state).vertex_scalar;
}

CurvatureReport curvature_report(const MetricState& state) {
  CurvatureReport rep;
  rep.edge_ricci = ricci_curvature(state);
  rep.vertex_scalar.assign(state.tri->vertex_count, 0.0);
  for (std::size_t e = 0; e < state.tri->edges.size(); ++e) {
    const EdgeRecord& rec = state.tri->edges[e];
    const double phi = state.weights[e];
    rep.vertex_scalar[rec.v] +=
        rep.edge_ricci[e] * pentagon_cosh_theta(state.radii[rec.v], state.radii[rec.w], phi);
    rep.vertex_scalar[rec.w] +=
        rep.edge_ricci[e] * pentagon_cosh_theta(state.radii[rec.w], state.radii[rec.v], phi);
  }
  return rep;
}

Eigen::MatrixXd ricci_mode_hessian(const MetricState& state) {
  require_admissible(state);
  const int n = state.tri->vertex_count;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t tid = 0; tid < state.tri->tets.size(); ++tid) {
    const int t = static_cast<int>(tid);
    const Eigen::Matrix<double, 4, 6> a = dl_dr(state.tet_radii(t), state.tet_weights(t));
    const Eigen::Matrix<double, 6, 6> m = dbeta_dl(state.tet_lengths(t));
    const Eigen::Matrix4d local = -(a * m * a.transpose());
    const auto& verts = state.tri->tets[tid].vertices;
    for (int p = 0; p < 4; ++p) {
      for (int q = 0; q < 4; ++q) {
        h(verts[p], verts[q]) += local(p, q);
      }
    }
  }
  return h;
}

Eigen::MatrixXd hess_G(const MetricState& state) {
  Eigen::MatrixXd h = ricci_mode_hessian(state);
  const std::vector<double> k = ricci_curvature(state);
  for (std::size_t e = 0; e < state.tri->edges.size(); ++e) {
    const EdgeRecord& rec = state.tri->edges[e];
    const Eigen::Matrix2d corner =
        hess_edge_length(state.radii[rec.v], state.radii[rec.w], state.weights[e]);
    const int idx[2] = {rec.v, rec.w};
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) {
        h(idx[p], idx[q]) += k[e] * corner(p, q);
      }
    }
  }
  return h;
}

Certificate rigidity_certificate(const MetricState& state, CertificateMode mode,
                                 double tol) {
  require_admissible(state);
  Certificate cert;
  cert.mode = mode;
  cert.tolerance = tol;

  std::vector<int> heavy_edges;
  for (std::size_t e = 0; e < state.weights.size(); ++e) {
    if (std::cos(state.weights[e]) < kTierMinCosine - kEpsGeom) {
      heavy_edges.push_back(static_cast<int>(e));
    }
  }
  cert.weight_tier_ok = heavy_edges.empty();
  if (!cert.weight_tier_ok) {
    cert.violating_edges = heavy_edges;
    throw HypothesisFailed("weight hypothesis fails: " + std::to_string(heavy_edges.size()) +
                               " edge(s) exceed arccos(1/3)",
                           heavy_edges);
  }

  if (mode == CertificateMode::scalar) {
    const std::vector<double> k = ricci_curvature(state);
    std::vector<int> wrong_sign;
    for (std::size_t e = 0; e < k.size(); ++e) {
      const double s = std::sin(state.weights[e]);
      if (k[e] * s * s < -kEpsGeom) wrong_sign.push_back(static_cast<int>(e));
    }
    cert.curvature_sign_ok = wrong_sign.empty();
    if (!cert.curvature_sign_ok) {
      cert.violating_edges = wrong_sign;
      throw HypothesisFailed("curvature sign hypothesis fails: K sin^2(phi) < 0 at " +
                                 std::to_string(wrong_sign.size()) + " edge(s)",
                             wrong_sign);
    }
  } else {
    cert.curvature_sign_ok = true;  // not part of the ricci-mode hypothesis
  }

  const Eigen::MatrixXd h =
      mode == CertificateMode::scalar ? hess_G(state) : ricci_mode_hessian(state);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  if (eig.info() != Eigen::Success) {
    cert.lambda_min = std::numeric_limits<double>::quiet_NaN();
    cert.lambda_max = std::numeric_limits<double>::quiet_NaN();
    cert.certified = false;
    return cert;
  }
  cert.lambda_min = eig.eigenvalues().minCoeff();
  cert.lambda_max = eig.eigenvalues().maxCoeff();
  cert.certified = cert.lambda_max < -tol * (1.0 + std::abs(cert.lambda_min));
  return cert;
}

std::string certificate_mode_name(CertificateMode mode) {
  return mode == CertificateMode::scalar ? "scalar" : "ricci";
}

}  // namespace hyperpack
