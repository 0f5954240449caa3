#include "doctest.h"

#include <array>
#include <cmath>

#include "hyperpack/errors.hpp"
#include "hyperpack/sampling.hpp"
#include "hyperpack/trunctet.hpp"

#include "test_support.hpp"

using namespace hyperpack;

namespace {

TetWeights zero_weights() {
  return TetWeights::from_angles({0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
}

TetRadii unit_radii() {
  TetRadii r;
  r.r = {1.0, 1.0, 1.0, 1.0};
  return r;
}

TetWeights pattern_weights(int pick) {
  // Opposite slot pairs: (01,23), (02,13), (03,12).
  static constexpr int kOpposite[3][2] = {{0, 5}, {1, 4}, {2, 3}};
  TetWeights w;
  w.cosines = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  w.cosines[kOpposite[pick][0]] = 1.0;
  w.cosines[kOpposite[pick][1]] = 1.0;
  return w;
}

}  // namespace

TEST_CASE("slot order and index") {
  CHECK(slot_index(0, 1) == 0);
  CHECK(slot_index(1, 0) == 0);
  CHECK(slot_index(0, 2) == 1);
  CHECK(slot_index(0, 3) == 2);
  CHECK(slot_index(1, 2) == 3);
  CHECK(slot_index(1, 3) == 4);
  CHECK(slot_index(2, 3) == 5);
  for (int slot = 0; slot < 6; ++slot) {
    const auto [a, b] = kSlots[slot];
    CHECK(slot_index(a, b) == slot);
  }
}

TEST_CASE("weight classes") {
  CHECK(zero_weights().valid());
  CHECK(zero_weights().rigidity_tier());
  CHECK(!zero_weights().always_degenerate_pattern());
  const TetWeights tier = TetWeights::from_angles(
      {1.2, 0.3, 0.9, 1.23, 0.0, 0.7});
  CHECK(tier.valid());
  CHECK(tier.rigidity_tier());
  const TetWeights heavy = TetWeights::from_angles(
      {1.5, 0.3, 0.9, 1.23, 0.0, 0.7});
  CHECK(heavy.valid());
  CHECK(!heavy.rigidity_tier());
  for (int pick = 0; pick < 3; ++pick) {
    CHECK(pattern_weights(pick).always_degenerate_pattern());
    CHECK(pattern_weights(pick).valid());
  }
}

TEST_CASE("regular configuration closed forms") {
  // Zero weights, unit radii: every edge length is exactly 2 and the four
  // vertex triangles are congruent equilateral.
  const TetLengths lengths = lengths_from_radii(unit_radii(), zero_weights());
  for (double l : lengths.l) CHECK(l == doctest::Approx(2.0).epsilon(1e-15));
  for (int apex = 0; apex < 4; ++apex) {
    const auto x = vertex_triangle_sides(lengths, apex);
    for (double s : x) CHECK(s == doctest::Approx(0.82713690163855677664).epsilon(1e-14));
  }
  const auto beta = dihedral_angles(lengths);
  for (double b : beta) {
    CHECK(b == doctest::Approx(0.95619175656607113275).epsilon(1e-14));
  }
}

TEST_CASE("q polynomial closed forms at zero weights") {
  CHECK(q3(zero_weights()) == doctest::Approx(16.0).epsilon(1e-15));
  for (double tau : {0.25, 0.5, 0.9}) {
    TetRadii r;
    r.r = {std::atanh(tau), std::atanh(tau), std::atanh(tau), std::atanh(tau)};
    CHECK(q2(r, zero_weights()) ==
          doctest::Approx(32.0 * tau * tau + 16.0).epsilon(1e-13));
  }
  TetRadii r;
  const double half = std::atanh(0.5);
  r.r = {half, half, half, half};
  const ApexQuadratic aq = apex_quadratic(0, r, zero_weights());
  CHECK(aq.a == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(aq.b == doctest::Approx(-12.0).epsilon(1e-13));
  CHECK(aq.c == doctest::Approx(-19.0).epsilon(1e-13));
  CHECK(aq.delta == doctest::Approx(448.0).epsilon(1e-13));
  CHECK(aq.f1_residual < 1e-14);
  const auto tau = v_threshold(0, r, zero_weights());
  REQUIRE(tau.has_value());
  CHECK(*tau == doctest::Approx(4.145751311064591).epsilon(1e-13));
}

TEST_CASE("q2 euler identity and q1 normalization") {
  Sampler s(21);
  for (int i = 0; i < 200; ++i) {
    const TetRadii r = s.radii();
    const TetWeights w = s.weights(1.5707963267948966);
    const auto h = h_vector(r, w);
    const auto t = r.t();
    double sum = q3(w);
    for (int nu = 0; nu < 4; ++nu) sum += t[nu] * h[nu];
    CHECK(rel_diff(q2(r, w), sum) < 1e-12);
    double prod = 1.0;
    for (double x : r.r) prod *= std::cosh(x) * std::cosh(x);
    CHECK(rel_diff(q1(r, w), q2(r, w) * prod) < 1e-12);
  }
}

TEST_CASE("degenerate weight patterns kill every radius vector") {
  Sampler s(22);
  for (int pick = 0; pick < 3; ++pick) {
    const TetWeights w = pattern_weights(pick);
    for (int i = 0; i < 100; ++i) {
      const TetRadii r = s.radii(0.05, 50.0);
      CHECK(std::abs(q2(r, w)) < 1e-12);
      CHECK(!is_nondegenerate(r, w));
    }
  }
}

TEST_CASE("algebraic predicate matches hyperboloid signature") {
  Sampler s(23);
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    const TetRadii r = s.radii();
    const TetWeights w = s.weights(1.5707963267948966);
    if (!lengths_exist(r, w)) continue;
    const double q = q2(r, w);
    if (std::abs(q) < 1e-9) continue;
    ++compared;
    const bool sig = gram_oracle::signature_ok(gram_oracle::gram(lengths_from_radii(r, w)));
    CHECK((q > 0.0) == sig);
  }
  CHECK(compared > 200);
}

TEST_CASE("dihedral angles match the hyperboloid oracle") {
  Sampler s(24);
  for (int i = 0; i < 200; ++i) {
    TetRadii r;
    TetWeights w;
    s.nondegenerate_tet(r, w, 1e-3);
    const TetLengths lengths = lengths_from_radii(r, w);
    const auto beta = dihedral_angles(lengths);
    const auto ref = gram_oracle::dihedral_angles(lengths);
    for (int slot = 0; slot < 6; ++slot) {
      CHECK(std::abs(beta[slot] - ref[slot]) < 1e-9);
    }
  }
}

TEST_CASE("dl_dr sparsity pattern") {
  Sampler s(25);
  TetRadii r;
  TetWeights w;
  s.nondegenerate_tet(r, w, 1e-3);
  const auto m = dl_dr(r, w);
  for (int nu = 0; nu < 4; ++nu) {
    for (int slot = 0; slot < 6; ++slot) {
      const auto [a, b] = kSlots[slot];
      if (nu == a || nu == b) {
        CHECK(m(nu, slot) >= 1.0);  // cosh theta
      } else {
        CHECK(m(nu, slot) == 0.0);
      }
    }
  }
}

TEST_CASE("hess_edge_length closed form and sign") {
  const Eigen::Matrix2d zero = hess_edge_length(0.7, 1.3, 0.0);
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);
  const double r1 = 0.8, r2 = 1.1, phi = 1.0;
  const double l = pentagon_edge_length(r1, r2, phi);
  const double scale = -std::sin(phi) * std::sin(phi) / std::pow(std::sinh(l), 3);
  const Eigen::Matrix2d m = hess_edge_length(r1, r2, phi);
  CHECK(rel_diff(m(0, 0), scale * std::cosh(l) * std::cosh(r2) * std::cosh(r2)) < 1e-13);
  CHECK(rel_diff(m(1, 1), scale * std::cosh(l) * std::cosh(r1) * std::cosh(r1)) < 1e-13);
  CHECK(rel_diff(m(0, 1), scale * std::cosh(r1) * std::cosh(r2)) < 1e-13);
  CHECK(m(0, 1) == m(1, 0));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(m);
  CHECK(eig.eigenvalues().maxCoeff() < 0.0);
}

TEST_CASE("dbeta_dl is symmetric positive definite") {
  Sampler s(26);
  for (int i = 0; i < 50; ++i) {
    TetRadii r;
    TetWeights w;
    s.nondegenerate_tet(r, w, 1e-2);
    const auto m = dbeta_dl(lengths_from_radii(r, w));
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-8);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> eig(m);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("relative volume antisymmetry and additivity") {
  Sampler s(27);
  TetRadii r;
  TetWeights w;
  s.nondegenerate_tet(r, w, 5e-2, 0.3, 2.0);
  const TetLengths a = lengths_from_radii(r, w);
  s.nondegenerate_tet(r, w, 5e-2, 0.3, 2.0);
  const TetLengths b = lengths_from_radii(r, w);
  s.nondegenerate_tet(r, w, 5e-2, 0.3, 2.0);
  const TetLengths c = lengths_from_radii(r, w);
  CHECK(std::abs(relative_volume(a, b) + relative_volume(b, a)) < 1e-12);
  CHECK(std::abs(relative_volume(a, b) + relative_volume(b, c) + relative_volume(c, a)) <
        1e-9);
  CHECK(relative_volume(a, a) == 0.0);
}

TEST_CASE("volume shrinks toward the ideal limit under length inflation") {
  // Growing all six lengths shrinks the truncation triangles and raises the
  // dihedral angles toward the ideal regular value pi/3, so by the volume
  // differential -(1/2) sum l dbeta the volume decreases.
  TetLengths a, b;
  a.l = {2.0, 2.0, 2.0, 2.0, 2.0, 2.0};
  b.l = {2.2, 2.2, 2.2, 2.2, 2.2, 2.2};
  CHECK(relative_volume(b, a) < 0.0);
  const auto beta_a = dihedral_angles(a);
  const auto beta_b = dihedral_angles(b);
  CHECK(beta_b[0] > beta_a[0]);
  CHECK(beta_b[0] < 3.141592653589793 / 3.0);
}
