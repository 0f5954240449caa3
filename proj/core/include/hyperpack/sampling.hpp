#pragma once

// Deterministic seeded sampling shared by the verification suites, the CLI,
// and the tests. All draws are sequential from one mt19937_64 stream so a
// (seed, call sequence) pair fully determines every sample.

#include <cstdint>
#include <random>

#include "hyperpack/curvature.hpp"
#include "hyperpack/trunctet.hpp"

namespace hyperpack {

inline constexpr double kRigidityTierMaxAngle = 1.2309594173407747;  // arccos(1/3)

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);

  // Radii log-uniform on [lo, hi]; default matches the CLI contract.
  TetRadii radii(double lo = 0.05, double hi = 5.0);
  // Weight angles uniform on [0, max_angle] per slot.
  TetWeights weights(double max_angle);

  // Rejection-sample a configuration whose nondegeneracy oracle passes, with
  // every vertex triangle keeping at least `margin` of triangle-inequality
  // slack (derivative tests need interior points).
  void nondegenerate_tet(TetRadii& radii_out, TetWeights& weights_out,
                         double margin = 1e-3, double r_lo = 0.05, double r_hi = 5.0,
                         double max_angle = 1.5707963267948966);

  // Rejection-sample an admissible metric state on the triangulation.
  MetricState admissible_state(std::shared_ptr<const Triangulation> tri,
                               double max_angle, double r_lo = 0.3, double r_hi = 3.0);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace hyperpack
