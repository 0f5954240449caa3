#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "hyperpack/complex.hpp"
#include "hyperpack/curvature.hpp"
#include "hyperpack/sampling.hpp"
#include "hyperpack/solver.hpp"
#include "hyperpack/trunctet.hpp"

using namespace hyperpack;

namespace {

std::shared_ptr<const Triangulation> builtin(const char* name) {
  return std::make_shared<Triangulation>(parse_triangulation(builtin_triangulation(name)));
}

void bm_q2(benchmark::State& state) {
  Sampler s(1);
  const TetRadii r = s.radii();
  const TetWeights w = s.weights(1.5707963267948966);
  for (auto _ : state) {
    benchmark::DoNotOptimize(q2(r, w));
  }
}
BENCHMARK(bm_q2);

void bm_nondegeneracy_oracle(benchmark::State& state) {
  Sampler s(2);
  TetRadii r;
  TetWeights w;
  s.nondegenerate_tet(r, w, 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nondegeneracy_oracle(r, w));
  }
}
BENCHMARK(bm_nondegeneracy_oracle);

void bm_dihedral_angles(benchmark::State& state) {
  Sampler s(3);
  TetRadii r;
  TetWeights w;
  s.nondegenerate_tet(r, w, 1e-3);
  const TetLengths lengths = lengths_from_radii(r, w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dihedral_angles(lengths));
  }
}
BENCHMARK(bm_dihedral_angles);

void bm_dbeta_dl(benchmark::State& state) {
  Sampler s(4);
  TetRadii r;
  TetWeights w;
  s.nondegenerate_tet(r, w, 1e-3);
  const TetLengths lengths = lengths_from_radii(r, w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dbeta_dl(lengths));
  }
}
BENCHMARK(bm_dbeta_dl);

void bm_hess_g(benchmark::State& state) {
  Sampler s(5);
  const char* name = state.range(0) == 0 ? "double4" : "fan6";
  const MetricState st = Sampler(5).admissible_state(builtin(name), kRigidityTierMaxAngle);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hess_G(st));
  }
}
BENCHMARK(bm_hess_g)->Arg(0)->Arg(1);

void bm_solve(benchmark::State& state) {
  Sampler s(6);
  const auto tri = builtin(state.range(0) == 0 ? "double4" : "fan6");
  const MetricState truth = s.admissible_state(tri, kRigidityTierMaxAngle);
  const auto target = scalar_curvature(truth);
  std::vector<double> start(truth.radii);
  for (double& x : start) x *= 1.0 + s.uniform(-0.05, 0.05);
  const MetricState from = make_state(tri, truth.weights, std::move(start));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_prescribed_scalar(from, target));
  }
}
BENCHMARK(bm_solve)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
