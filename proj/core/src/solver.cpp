#include "hyperpack/solver.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperpack/errors.hpp"
#include "hyperpack/hyptrig.hpp"

namespace hyperpack {

namespace {

void require_admissible(const MetricState& state, const char* which) {
  if (state.admissible) return;
  const std::vector<int> bad = inadmissible_tets(state);
  throw InadmissibleState(std::string(which) + " state is inadmissible (" +
                              std::to_string(bad.size()) + " degenerate tet(s))",
                          bad);
}

double max_norm_residual(const std::vector<double>& k, const std::vector<double>& target) {
  double worst = 0.0;
  for (std::size_t v = 0; v < k.size(); ++v) {
    worst = std::max(worst, std::abs(k[v] - target[v]));
  }
  return worst;
}

bool sign_hypothesis_holds(const MetricState& state, const std::vector<double>& edge_ricci) {
  for (std::size_t e = 0; e < edge_ricci.size(); ++e) {
    const double s = std::sin(state.weights[e]);
    if (edge_ricci[e] * s * s < -kEpsGeom) return false;
  }
  return true;
}

}  // namespace

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::singular_hessian: return "singular_hessian";
    case Termination::left_admissible: return "left_admissible";
    case Termination::max_iterations: return "max_iterations";
  }
  return "unknown";
}

SolveResult solve_prescribed_scalar(const MetricState& initial,
                                    const std::vector<double>& target,
                                    const SolveOptions& opts) {
  if (target.size() != static_cast<std::size_t>(initial.tri->vertex_count)) {
    throw ValidationError("expected " + std::to_string(initial.tri->vertex_count) +
                          " target values, got " + std::to_string(target.size()));
  }
  if (opts.max_iterations < 0 || !(opts.residual_tol > 0.0) ||
      !(opts.step_shrink > 0.0 && opts.step_shrink < 1.0) || !(opts.min_step > 0.0)) {
    throw ValidationError("solve options out of range");
  }
  require_admissible(initial, "initial");

  MetricState state = initial;
  CurvatureReport rep = curvature_report(state);
  double res = max_norm_residual(rep.vertex_scalar, target);

  SolveResult out;
  out.radii = state.radii;
  out.residual_history.push_back(res);
  out.hypothesis_maintained = sign_hypothesis_holds(state, rep.edge_ricci);

  const int n = state.tri->vertex_count;
  while (true) {
    if (res <= opts.residual_tol) {
      out.termination = Termination::converged;
      break;
    }
    if (out.iterations >= opts.max_iterations) {
      out.termination = Termination::max_iterations;
      break;
    }

    const Eigen::MatrixXd h = hess_G(state);
    Eigen::VectorXd g(n);
    for (int v = 0; v < n; ++v) g(v) = rep.vertex_scalar[v] - target[v];
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    bool singular = ldlt.info() != Eigen::Success;
    Eigen::VectorXd delta;
    if (!singular) {
      delta = ldlt.solve(-g);
      singular = !delta.allFinite() ||
                 (h * delta + g).norm() > 1e-8 * std::max(1.0, g.norm());
    }
    if (singular) {
      out.termination = Termination::singular_hessian;
      break;
    }

    bool accepted = false;
    for (double s = 1.0; s >= opts.min_step; s *= opts.step_shrink) {
      std::vector<double> trial_radii(state.radii);
      bool in_range = true;
      for (int v = 0; v < n; ++v) {
        trial_radii[v] += s * delta(v);
        if (!(trial_radii[v] > 0.0) || !(trial_radii[v] <= kMaxRadius)) in_range = false;
      }
      if (!in_range) continue;
      MetricState trial = make_state(state.tri, state.weights, std::move(trial_radii));
      if (!trial.admissible) continue;
      CurvatureReport trial_rep = curvature_report(trial);
      const double trial_res = max_norm_residual(trial_rep.vertex_scalar, target);
      if (trial_res > res) continue;
      state = std::move(trial);
      rep = std::move(trial_rep);
      res = trial_res;
      accepted = true;
      break;
    }
    if (!accepted) {
      out.termination = Termination::left_admissible;
      break;
    }

    out.iterations += 1;
    out.residual_history.push_back(res);
    out.radii = state.radii;
    if (!sign_hypothesis_holds(state, rep.edge_ricci)) {
      out.hypothesis_maintained = false;
    }
  }
  return out;
}

double relative_potential(const MetricState& a, const MetricState& b, int steps) {
  if (steps < 1) {
    throw DomainError("steps must be >= 1");
  }
  const bool same_tri =
      a.tri == b.tri || serialize_triangulation(*a.tri) == serialize_triangulation(*b.tri);
  if (!same_tri || a.weights != b.weights) {
    throw ValidationError("states must share triangulation and weights");
  }
  require_admissible(a, "first");
  require_admissible(b, "second");

  const int n = a.tri->vertex_count;
  std::vector<double> delta(n);
  for (int v = 0; v < n; ++v) delta[v] = b.radii[v] - a.radii[v];

  auto state_at = [&](double u) {
    std::vector<double> r(n);
    for (int v = 0; v < n; ++v) r[v] = a.radii[v] + u * delta[v];
    MetricState st = make_state(a.tri, a.weights, std::move(r));
    if (!st.admissible) {
      throw PathLeavesAdmissible("radius segment leaves admissibility at parameter " +
                                 std::to_string(u));
    }
    return st;
  };

  static constexpr double kNodes[4] = {-0.8611363115940526, -0.3399810435848563,
                                       0.3399810435848563, 0.8611363115940526};
  static constexpr double kWeights[4] = {0.3478548451374538, 0.6521451548625461,
                                         0.6521451548625461, 0.3478548451374538};

  double integral = 0.0;
  const double panel = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    state_at(k * panel);  // admissibility checkpoint at the panel boundary
    const double mid = (k + 0.5) * panel;
    for (int g = 0; g < 4; ++g) {
      const double u = mid + 0.5 * panel * kNodes[g];
      const MetricState st = state_at(u);
      const std::vector<double> kv = scalar_curvature(st);
      double sum = 0.0;
      for (int v = 0; v < n; ++v) sum += kv[v] * delta[v];
      integral += kWeights[g] * 0.5 * panel * sum;
    }
  }
  state_at(1.0);
  return integral;
}

}  // namespace hyperpack
