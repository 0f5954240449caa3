#include "hyperpack/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "hyperpack/errors.hpp"

namespace hyperpack {

namespace {

constexpr int kMaxAttempts = 1000000;

double triangle_slack(const std::array<double, 3>& x) {
  return std::min({x[0] + x[1] - x[2], x[0] + x[2] - x[1], x[1] + x[2] - x[0]});
}

}  // namespace

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double Sampler::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

TetRadii Sampler::radii(double lo, double hi) {
  TetRadii out;
  for (double& r : out.r) r = log_uniform(lo, hi);
  return out;
}

TetWeights Sampler::weights(double max_angle) {
  std::array<double, 6> phi{};
  for (double& p : phi) p = uniform(0.0, max_angle);
  return TetWeights::from_angles(phi);
}

void Sampler::nondegenerate_tet(TetRadii& radii_out, TetWeights& weights_out,
                                double margin, double r_lo, double r_hi,
                                double max_angle) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const TetRadii r = radii(r_lo, r_hi);
    const TetWeights w = weights(max_angle);
    if (!lengths_exist(r, w)) continue;
    const TetLengths lengths = lengths_from_radii(r, w);
    bool roomy = true;
    for (int apex = 0; apex < 4 && roomy; ++apex) {
      roomy = triangle_slack(vertex_triangle_sides(lengths, apex)) >= margin;
    }
    if (!roomy) continue;
    radii_out = r;
    weights_out = w;
    return;
  }
  throw Error("nondegenerate tetrahedron sampling exhausted its attempt budget");
}

MetricState Sampler::admissible_state(std::shared_ptr<const Triangulation> tri,
                                      double max_angle, double r_lo, double r_hi) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<double> w(tri->edges.size());
    for (double& x : w) x = uniform(0.0, max_angle);
    std::vector<double> r(tri->vertex_count);
    for (double& x : r) x = log_uniform(r_lo, r_hi);
    MetricState st = make_state(tri, std::move(w), std::move(r));
    if (st.admissible) return st;
  }
  throw Error("admissible state sampling exhausted its attempt budget");
}

}  // namespace hyperpack
