#pragma once

// Damped Newton solver for prescribed scalar curvature, plus the
// path-integral potential difference used for diagnostics.

#include <string>
#include <vector>

#include "hyperpack/curvature.hpp"

namespace hyperpack {

struct SolveOptions {
  int max_iterations = 50;
  double residual_tol = 1e-10;  // max-norm on K - target
  double step_shrink = 0.5;
  double min_step = 1e-12;
};

enum class Termination { converged, singular_hessian, left_admissible, max_iterations };

std::string termination_name(Termination t);

struct SolveResult {
  std::vector<double> radii;
  int iterations = 0;
  std::vector<double> residual_history;  // max-norm per accepted iterate, starting at the initial state
  Termination termination = Termination::max_iterations;
  // True when K_e sin^2(phi_e) >= 0 held at every accepted iterate; a false
  // value marks the result uncertified (the sufficient rigidity hypothesis
  // lapsed along the way), not wrong.
  bool hypothesis_maintained = true;
};

// Newton iteration r <- r + s*delta with hess_G(r) delta = -(K(r) - target),
// s halved from 1 until the trial state is admissible and the residual
// max-norm does not increase. Throws InadmissibleState if the initial state
// is not admissible; every other outcome is reported in the result.
SolveResult solve_prescribed_scalar(const MetricState& initial,
                                    const std::vector<double>& target,
                                    const SolveOptions& opts = {});

// G(b) - G(a) where dG = sum_v K_v dr_v, integrated along the straight
// segment in radius space with composite 4-point Gauss-Legendre quadrature
// over `steps` panels. Both states must share triangulation and weights.
// Throws PathLeavesAdmissible when an intermediate state is inadmissible.
double relative_potential(const MetricState& a, const MetricState& b, int steps = 256);

}  // namespace hyperpack
