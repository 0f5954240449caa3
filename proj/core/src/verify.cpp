#include "hyperpack/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "hyperpack/complex.hpp"
#include "hyperpack/curvature.hpp"
#include "hyperpack/errors.hpp"
#include "hyperpack/hyptrig.hpp"
#include "hyperpack/sampling.hpp"
#include "hyperpack/solver.hpp"
#include "hyperpack/trunctet.hpp"

namespace hyperpack {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 1.5707963267948966;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::shared_ptr<const Triangulation> load_builtin(const char* name) {
  return std::make_shared<Triangulation>(parse_triangulation(builtin_triangulation(name)));
}

double pentagon_arg(double r_i, double r_j, double phi) {
  return std::sinh(r_i) * std::sinh(r_j) + std::cos(phi) * std::cosh(r_i) * std::cosh(r_j);
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// Angle of the vertex triangle at `apex` facing `other`, built from public
// pieces only; used to cross-check dihedral_angles route averaging.
double corner_angle(const TetLengths& lengths, int apex, int other) {
  const auto sides = vertex_triangle_sides(lengths, apex);
  std::array<int, 3> rest{};
  int p = 0;
  for (int m = 0; m < 4; ++m) {
    if (m != apex) rest[p++] = m;
  }
  // sides[] pairs in ascending order: (rest0,rest1), (rest0,rest2), (rest1,rest2)
  if (other == rest[0]) return triangle_angle(sides[0], sides[1], sides[2]);
  if (other == rest[1]) return triangle_angle(sides[0], sides[2], sides[1]);
  return triangle_angle(sides[1], sides[2], sides[0]);
}

MetricState redraw_radii(Sampler& s, const MetricState& like, double r_lo, double r_hi) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<double> r(like.tri->vertex_count);
    for (double& x : r) x = s.log_uniform(r_lo, r_hi);
    MetricState st = make_state(like.tri, like.weights, std::move(r));
    if (st.admissible) return st;
  }
  throw Error("radius redraw exhausted its attempt budget");
}

SuiteResult pentagon_symmetry(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  int checked = 0;
  for (int i = 0; i < samples; ++i) {
    const double r1 = s.log_uniform(0.05, 5.0);
    const double r2 = s.log_uniform(0.05, 5.0);
    const double phi = s.uniform(0.0, kHalfPi);
    if (!pentagon_edge_exists(r1, r2, phi)) continue;
    ++checked;
    worst = std::max(worst, std::abs(pentagon_edge_length(r1, r2, phi) -
                                     pentagon_edge_length(r2, r1, phi)));
  }
  out.worst = worst;
  out.pass = checked > 0 && worst < 1e-12;
  out.detail = "checked=" + std::to_string(checked) + "/" + std::to_string(samples) +
               " tol=1e-12";
  return out;
}

SuiteResult pentagon_weight_monotone(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;  // positive value = monotonicity violation
  int checked = 0;
  for (int i = 0; i < samples; ++i) {
    const double r1 = s.log_uniform(0.05, 5.0);
    const double r2 = s.log_uniform(0.05, 5.0);
    double p1 = s.uniform(0.0, kHalfPi);
    double p2 = s.uniform(0.0, kHalfPi);
    if (p1 > p2) std::swap(p1, p2);
    if (!pentagon_edge_exists(r1, r2, p2)) continue;
    ++checked;
    worst = std::max(worst, pentagon_edge_length(r1, r2, p2) -
                                pentagon_edge_length(r1, r2, p1));
  }
  out.worst = worst;
  out.pass = checked > 0 && worst < 1e-12;
  out.detail = "checked=" + std::to_string(checked) + "/" + std::to_string(samples) +
               " tol=1e-12";
  return out;
}

SuiteResult pentagon_theta_derivative(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  int checked = 0;
  const double h = 1e-5;
  for (int i = 0; i < samples; ++i) {
    const double r1 = s.log_uniform(0.05, 5.0);
    const double r2 = s.log_uniform(0.05, 5.0);
    const double phi = s.uniform(0.0, kHalfPi);
    if (pentagon_arg(r1 - h, r2, phi) < 1.05) continue;
    ++checked;
    const double fd = (pentagon_edge_length(r1 + h, r2, phi) -
                       pentagon_edge_length(r1 - h, r2, phi)) /
                      (2.0 * h);
    worst = std::max(worst, rel_diff(fd, pentagon_cosh_theta(r1, r2, phi)));
  }
  out.worst = worst;
  out.pass = checked > 0 && worst < 1e-6;
  out.detail = "checked=" + std::to_string(checked) + "/" + std::to_string(samples) +
               " tol=1e-6";
  return out;
}

SuiteResult hexagon_jet_suite(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  const double h = 1e-5;
  for (int i = 0; i < samples; ++i) {
    const double a = s.log_uniform(0.1, 4.0);
    const double b = s.log_uniform(0.1, 4.0);
    const double o = s.log_uniform(0.1, 4.0);
    worst = std::max(worst, std::abs(hexagon_opposite_side(a, b, o) -
                                     hexagon_opposite_side(b, a, o)));
    const HexJet jet = hexagon_opposite_side_jet(a, b, o);
    const double fa = (hexagon_opposite_side(a + h, b, o) -
                       hexagon_opposite_side(a - h, b, o)) / (2.0 * h);
    const double fb = (hexagon_opposite_side(a, b + h, o) -
                       hexagon_opposite_side(a, b - h, o)) / (2.0 * h);
    const double fo = (hexagon_opposite_side(a, b, o + h) -
                       hexagon_opposite_side(a, b, o - h)) / (2.0 * h);
    worst = std::max({worst, rel_diff(fa, jet.d_la), rel_diff(fb, jet.d_lb),
                      rel_diff(fo, jet.d_lopp)});
  }
  out.worst = worst;
  out.pass = worst < 1e-6;
  out.detail = "samples=" + std::to_string(samples) + " tol=1e-6";
  return out;
}

SuiteResult triangle_jet_suite(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  const double h = 1e-6;
  const int draws = std::max(1, samples / 4);
  int range_failures = 0;
  for (int i = 0; i < draws; ++i) {
    TetRadii r;
    TetWeights w;
    s.nondegenerate_tet(r, w, 1e-2);
    const TetLengths lengths = lengths_from_radii(r, w);
    for (int apex = 0; apex < 4; ++apex) {
      const auto x = vertex_triangle_sides(lengths, apex);
      const TriJet jet = triangle_angle_jet(x[0], x[1], x[2]);
      if (!(jet.angle > 0.0 && jet.angle < kPi)) ++range_failures;
      const double f1 = (triangle_angle(x[0] + h, x[1], x[2]) -
                         triangle_angle(x[0] - h, x[1], x[2])) / (2.0 * h);
      const double f2 = (triangle_angle(x[0], x[1] + h, x[2]) -
                         triangle_angle(x[0], x[1] - h, x[2])) / (2.0 * h);
      const double f3 = (triangle_angle(x[0], x[1], x[2] + h) -
                         triangle_angle(x[0], x[1], x[2] - h)) / (2.0 * h);
      worst = std::max({worst, rel_diff(f1, jet.d_x1), rel_diff(f2, jet.d_x2),
                        rel_diff(f3, jet.d_x3)});
    }
  }
  out.worst = worst;
  out.pass = worst < 1e-6 && range_failures == 0;
  out.detail = "tets=" + std::to_string(draws) + " tol=1e-6";
  return out;
}

SuiteResult thin_vertex_triangles(Sampler& s, int samples) {
  SuiteResult out;
  double max_sum = 0.0;
  const int draws = std::max(1, samples / 4);
  for (int i = 0; i < draws; ++i) {
    TetRadii r;
    TetWeights w;
    s.nondegenerate_tet(r, w, 1e-6);
    const TetLengths lengths = lengths_from_radii(r, w);
    for (int apex = 0; apex < 4; ++apex) {
      const auto x = vertex_triangle_sides(lengths, apex);
      const double sum = triangle_angle(x[0], x[1], x[2]) +
                         triangle_angle(x[0], x[2], x[1]) +
                         triangle_angle(x[1], x[2], x[0]);
      max_sum = std::max(max_sum, sum);
    }
  }
  out.worst = kPi - max_sum;  // positive margin required
  out.pass = out.worst > 0.0;
  out.detail = "tets=" + std::to_string(draws) + " max_angle_sum=" + fmt(max_sum);
  return out;
}

SuiteResult q2_euler_identity(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const TetRadii r = s.radii();
    const TetWeights w = s.weights(kHalfPi);
    const auto h = h_vector(r, w);
    const auto t = r.t();
    double rhs = q3(w);
    for (int nu = 0; nu < 4; ++nu) rhs += t[nu] * h[nu];
    worst = std::max(worst, rel_diff(q2(r, w), rhs));
  }
  out.worst = worst;
  out.pass = worst < 1e-12;
  out.detail = "samples=" + std::to_string(samples) + " tol=1e-12";
  return out;
}

SuiteResult q2_gradient_fd(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  const double h = 1e-5;
  for (int i = 0; i < samples; ++i) {
    const TetRadii r = s.radii(0.1, 4.0);
    const TetWeights w = s.weights(kHalfPi);
    const auto hv = h_vector(r, w);
    const auto t = r.t();
    for (int nu = 0; nu < 4; ++nu) {
      TetRadii rp = r, rm = r;
      rp.r[nu] += h;
      rm.r[nu] -= h;
      const double fd = (q2(rp, w) - q2(rm, w)) / (2.0 * h);
      const double analytic = 2.0 * hv[nu] * (1.0 - t[nu] * t[nu]);
      worst = std::max(worst, rel_diff(fd, analytic));
    }
  }
  out.worst = worst;
  out.pass = worst < 1e-6;
  out.detail = "samples=" + std::to_string(samples) + " tol=1e-6";
  return out;
}

SuiteResult q2_relabel_invariance(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  std::array<int, 4> perm = {0, 1, 2, 3};
  for (int i = 0; i < samples; ++i) {
    const TetRadii r = s.radii();
    const TetWeights w = s.weights(kHalfPi);
    std::shuffle(perm.begin(), perm.end(), s.engine());
    TetRadii r2;
    TetWeights w2;
    for (int nu = 0; nu < 4; ++nu) r2.r[nu] = r.r[perm[nu]];
    for (int slot = 0; slot < 6; ++slot) {
      const auto [a, b] = kSlots[slot];
      w2.cosines[slot] = w.cosines[slot_index(perm[a], perm[b])];
    }
    worst = std::max(worst, rel_diff(q2(r, w), q2(r2, w2)));
  }
  out.worst = worst;
  out.pass = worst < 1e-12;
  out.detail = "samples=" + std::to_string(samples) + " tol=1e-12";
  return out;
}

SuiteResult discriminant_factorization(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  const int draws = std::max(1, samples / 4);
  for (int i = 0; i < draws; ++i) {
    const TetRadii r = s.radii(0.05, 50.0);
    const TetWeights w = s.weights(kHalfPi);
    const auto phi = w.angles();
    for (int apex = 0; apex < 4; ++apex) {
      const ApexQuadratic aq = apex_quadratic(apex, r, w);
      worst = std::max(worst, aq.f1_residual);
      // Product form of the face quantity A = -sq_apex: with opposite-face
      // angles u, v, z, A = 4 cos((u+v+z)/2) cos((u+v-z)/2) cos((u-v+z)/2) cos((-u+v+z)/2).
      std::array<int, 3> rest{};
      int p = 0;
      for (int m = 0; m < 4; ++m) {
        if (m != apex) rest[p++] = m;
      }
      const double u = phi[slot_index(rest[0], rest[1])];
      const double v = phi[slot_index(rest[0], rest[2])];
      const double z = phi[slot_index(rest[1], rest[2])];
      const double prod = 4.0 * std::cos(0.5 * (u + v + z)) * std::cos(0.5 * (u + v - z)) *
                          std::cos(0.5 * (u - v + z)) * std::cos(0.5 * (-u + v + z));
      worst = std::max(worst, rel_diff(aq.a, prod));
    }
  }
  out.worst = worst;
  out.pass = worst < 1e-10;
  out.detail = "tets=" + std::to_string(draws) + " tol=1e-10";
  return out;
}

SuiteResult apex_threshold_boundary(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  double min_tau = 1e300;
  int upper = 0;
  int crossings = 0;
  int below_one = 0;
  int sign_failures = 0;
  const int half = std::max(1, samples / 2);
  // Upper branch: whenever v_threshold exists (A > 0) it lies beyond t = 1,
  // so growing a single radius never degenerates a tet.
  for (int i = 0; i < half; ++i) {
    const TetRadii r = s.radii(0.05, 5.0);
    const TetWeights w = s.weights(kHalfPi);
    const int apex = static_cast<int>(s.engine()() % 4);
    const auto tau = v_threshold(apex, r, w);
    if (!tau) continue;
    ++upper;
    min_tau = std::min(min_tau, *tau);
    if (!(*tau > 1.0)) ++below_one;
  }
  // Crossing branch: all-heavy weights with small radii sit below Q2 = 0;
  // there A < 0 and the upper root of the apex quadratic lands inside (0, 1),
  // a realizable degenerate-to-nondegenerate boundary the radii can cross.
  for (int i = 0; i < half; ++i) {
    std::array<double, 6> phi{};
    for (double& p : phi) p = s.uniform(1.0, kHalfPi);
    const TetWeights w = TetWeights::from_angles(phi);
    TetRadii r = s.radii(0.01, 0.5);
    const int apex = static_cast<int>(s.engine()() % 4);
    const ApexQuadratic aq = apex_quadratic(apex, r, w);
    if (!(aq.a < -1e-9) || !(aq.delta > 1e-9)) continue;
    const double t_hi = (-aq.b - std::sqrt(aq.delta)) / (2.0 * aq.a);
    if (!(t_hi > 1e-3) || !(t_hi < 0.999)) continue;
    ++crossings;
    r.r[apex] = std::atanh(t_hi);
    const double q_at = q2(r, w);
    const double scale = 1.0 + std::abs(aq.a) + std::abs(aq.b) + std::abs(aq.c);
    worst = std::max(worst, std::abs(q_at) / scale);
    TetRadii above = r;
    above.r[apex] = std::atanh(std::min(t_hi + 1e-4, 0.9999));
    TetRadii below = r;
    below.r[apex] = std::atanh(std::max(t_hi - 1e-4, 1e-6));
    if (!(q2(above, w) > q_at) || !(q2(below, w) < q_at)) ++sign_failures;
  }
  out.worst = worst;
  out.pass = upper > 0 && below_one == 0 && crossings > 0 && sign_failures == 0 &&
             worst < 1e-10;
  out.detail = "upper=" + std::to_string(upper) + " min_tau=" + fmt(min_tau) +
               " crossings=" + std::to_string(crossings) +
               " sign_failures=" + std::to_string(sign_failures) + " tol=1e-10";
  return out;
}

SuiteResult tier_no_degeneracy(Sampler& s, int samples) {
  SuiteResult out;
  double min_q2 = 1e300;
  int with_lengths = 0;
  int oracle_failures = 0;
  for (int i = 0; i < samples; ++i) {
    const TetRadii wide = s.radii(0.05, 50.0);
    const TetWeights w = s.weights(kRigidityTierMaxAngle);
    min_q2 = std::min(min_q2, q2(wide, w));
    // The geometric oracle stays on moderate radii: past r ~ 10 the vertex
    // triangles shrink below double precision while q2 stays stable.
    const TetRadii r = s.radii(0.05, 5.0);
    if (lengths_exist(r, w)) {
      ++with_lengths;
      if (!lengths_nondegenerate(lengths_from_radii(r, w))) ++oracle_failures;
    }
  }
  out.worst = min_q2;  // must stay strictly positive
  out.pass = min_q2 > 0.0 && oracle_failures == 0;
  out.detail = "samples=" + std::to_string(samples) +
               " with_lengths=" + std::to_string(with_lengths) +
               " oracle_failures=" + std::to_string(oracle_failures);
  return out;
}

SuiteResult degenerate_h_signs(Sampler& s, int samples) {
  SuiteResult out;
  double min_second = 1e300;  // second-smallest h over degenerate samples
  int degenerate_found = 0;
  int pair_violations = 0;
  // Q3 < 0 lives where all six angles are large; small radii then keep
  // Q2 close to Q3 and below zero.
  for (int i = 0; i < samples; ++i) {
    std::array<double, 6> phi{};
    for (double& p : phi) p = s.uniform(1.0, kHalfPi);
    const TetWeights w = TetWeights::from_angles(phi);
    if (!(q3(w) < -1e-4)) continue;
    const TetRadii r = s.radii(0.01, 0.5);
    if (!(q2(r, w) < -1e-9)) continue;
    ++degenerate_found;
    auto h = h_vector(r, w);
    std::sort(h.begin(), h.end());
    if (h[1] <= 0.0) ++pair_violations;
    min_second = std::min(min_second, h[1]);
  }
  out.worst = degenerate_found > 0 ? min_second : 0.0;
  out.pass = degenerate_found > 0 && pair_violations == 0;
  out.detail = "degenerate=" + std::to_string(degenerate_found) + "/" +
               std::to_string(samples) + " pair_violations=" + std::to_string(pair_violations);
  return out;
}

SuiteResult oracle_agreement(Sampler& s, int samples) {
  SuiteResult out;
  int compared = 0;
  int positives = 0;
  int disagreements = 0;
  for (int i = 0; i < samples; ++i) {
    const TetRadii r = s.radii(0.05, 5.0);
    const TetWeights w = s.weights(kHalfPi);
    if (!lengths_exist(r, w)) continue;
    const double q = q2(r, w);
    if (std::abs(q) < 1e-9) continue;  // stay off the algebraic boundary
    ++compared;
    const bool algebraic = q > 0.0;
    const bool geometric = lengths_nondegenerate(lengths_from_radii(r, w));
    if (algebraic) ++positives;
    if (algebraic != geometric) ++disagreements;
  }
  out.worst = disagreements;
  out.pass = compared > 0 && disagreements == 0;
  out.detail = "compared=" + std::to_string(compared) +
               " nondegenerate=" + std::to_string(positives) +
               " disagreements=" + std::to_string(disagreements);
  return out;
}

SuiteResult dihedral_cross_apex(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  const int draws = std::max(1, samples / 10);
  for (int i = 0; i < draws; ++i) {
    TetRadii r;
    TetWeights w;
    s.nondegenerate_tet(r, w, 1e-3);
    const TetLengths lengths = lengths_from_radii(r, w);
    for (int slot = 0; slot < 6; ++slot) {
      const auto [a, b] = kSlots[slot];
      worst = std::max(worst, std::abs(corner_angle(lengths, a, b) -
                                       corner_angle(lengths, b, a)));
    }
  }
  out.worst = worst;
  out.pass = worst < 1e-9;
  out.detail = "tets=" + std::to_string(draws) + " tol=1e-9";
  return out;
}

SuiteResult dbeta_dl_shape(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  double min_eig = 1e300;
  const double h = 1e-5;
  const int draws = std::max(1, samples / 50);
  for (int i = 0; i < draws; ++i) {
    TetRadii r;
    TetWeights w;
    s.nondegenerate_tet(r, w, 1e-2);
    const TetLengths lengths = lengths_from_radii(r, w);
    const Eigen::Matrix<double, 6, 6> m = dbeta_dl(lengths);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    worst = std::max(worst, (m - m.transpose()).cwiseAbs().maxCoeff() / scale);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> eig(
        0.5 * (m + m.transpose()));
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    for (int slot = 0; slot < 6; ++slot) {
      TetLengths lp = lengths, lm = lengths;
      lp.l[slot] += h;
      lm.l[slot] -= h;
      const auto bp = dihedral_angles(lp);
      const auto bm = dihedral_angles(lm);
      for (int t = 0; t < 6; ++t) {
        const double fd = (bp[t] - bm[t]) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - m(t, slot)) / scale);
      }
    }
  }
  out.worst = worst;
  out.pass = worst < 1e-5 && min_eig > 0.0;
  out.detail = "tets=" + std::to_string(draws) + " min_eig=" + fmt(min_eig) + " tol=1e-5";
  return out;
}

SuiteResult dl_dr_jacobian(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  const double h = 1e-5;
  const int draws = std::max(1, samples / 20);
  int used = 0;
  for (int i = 0; i < draws; ++i) {
    TetRadii r;
    TetWeights w;
    s.nondegenerate_tet(r, w, 1e-2, 0.1, 4.0);
    // Keep clear of the length-existence boundary, where cosh(theta) blows up
    // and central differences lose accuracy.
    bool interior = true;
    for (int slot = 0; slot < 6 && interior; ++slot) {
      const auto [a, b] = kSlots[slot];
      if (pentagon_arg(r.r[a], r.r[b], w.angles()[slot]) < 1.05) interior = false;
    }
    if (!interior) continue;
    ++used;
    const Eigen::Matrix<double, 4, 6> m = dl_dr(r, w);
    for (int nu = 0; nu < 4; ++nu) {
      TetRadii rp = r, rm = r;
      rp.r[nu] += h;
      rm.r[nu] -= h;
      if (!lengths_exist(rm, w) || !lengths_exist(rp, w)) continue;
      const TetLengths lp = lengths_from_radii(rp, w);
      const TetLengths lm = lengths_from_radii(rm, w);
      for (int slot = 0; slot < 6; ++slot) {
        const double fd = (lp.l[slot] - lm.l[slot]) / (2.0 * h);
        worst = std::max(worst, rel_diff(fd, m(nu, slot)));
      }
    }
  }
  out.worst = worst;
  out.pass = used > 0 && worst < 1e-6;
  out.detail = "tets=" + std::to_string(used) + "/" + std::to_string(draws) + " tol=1e-6";
  return out;
}

SuiteResult hess_edge_kernel(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  const double h = 1e-4;
  int checked = 0;
  for (int i = 0; i < samples; ++i) {
    const double r1 = s.log_uniform(0.1, 4.0);
    const double r2 = s.log_uniform(0.1, 4.0);
    const double phi = s.uniform(0.0, kHalfPi);
    if (pentagon_arg(r1 - h, r2 - h, phi) < 1.05) continue;
    ++checked;
    const Eigen::Matrix2d m = hess_edge_length(r1, r2, phi);
    auto len = [&](double x, double y) { return pentagon_edge_length(x, y, phi); };
    const double d11 =
        (len(r1 + h, r2) - 2.0 * len(r1, r2) + len(r1 - h, r2)) / (h * h);
    const double d22 =
        (len(r1, r2 + h) - 2.0 * len(r1, r2) + len(r1, r2 - h)) / (h * h);
    const double d12 = (len(r1 + h, r2 + h) - len(r1 + h, r2 - h) -
                        len(r1 - h, r2 + h) + len(r1 - h, r2 - h)) /
                       (4.0 * h * h);
    worst = std::max({worst, rel_diff(d11, m(0, 0)), rel_diff(d22, m(1, 1)),
                      rel_diff(d12, m(0, 1))});
  }
  out.worst = worst;
  out.pass = checked > 0 && worst < 1e-4;
  out.detail = "checked=" + std::to_string(checked) + "/" + std::to_string(samples) +
               " tol=1e-4";
  return out;
}

SuiteResult hess_g_fd(Sampler& s, int samples) {
  SuiteResult out;
  double worst_fd = 0.0;
  double worst_asym = 0.0;
  const double h = 1e-5;
  const int draws = std::max(2, samples / 1000);
  const auto double4 = load_builtin("double4");
  const auto fan6 = load_builtin("fan6");
  int used = 0;
  for (int i = 0; i < draws; ++i) {
    const auto tri = (i % 2 == 0) ? double4 : fan6;
    const MetricState st = s.admissible_state(tri, kRigidityTierMaxAngle);
    const Eigen::MatrixXd hg = hess_G(st);
    const double scale = std::max(1.0, hg.cwiseAbs().maxCoeff());
    worst_asym = std::max(worst_asym, (hg - hg.transpose()).cwiseAbs().maxCoeff() / scale);
    bool interior = true;
    Eigen::MatrixXd fd(hg.rows(), hg.cols());
    for (int v = 0; v < tri->vertex_count && interior; ++v) {
      std::vector<double> rp = st.radii, rm = st.radii;
      rp[v] += h;
      rm[v] -= h;
      const MetricState sp = make_state(tri, st.weights, std::move(rp));
      const MetricState sm = make_state(tri, st.weights, std::move(rm));
      if (!sp.admissible || !sm.admissible) {
        interior = false;
        break;
      }
      const auto kp = scalar_curvature(sp);
      const auto km = scalar_curvature(sm);
      for (int u = 0; u < tri->vertex_count; ++u) {
        fd(u, v) = (kp[u] - km[u]) / (2.0 * h);
      }
    }
    if (!interior) continue;
    ++used;
    worst_fd = std::max(worst_fd, (fd - hg).cwiseAbs().maxCoeff() / scale);
  }
  out.worst = std::max(worst_fd, worst_asym);
  out.pass = used > 0 && worst_fd < 1e-5 && worst_asym < 1e-9;
  out.detail = "states=" + std::to_string(used) + "/" + std::to_string(draws) +
               " asym=" + fmt(worst_asym) + " fd_tol=1e-5";
  return out;
}

SuiteResult negativity_certificates(Sampler& s, int samples) {
  SuiteResult out;
  double worst = -1e300;  // largest eigenvalue seen; must stay negative
  int scalar_certified = 0;
  int scalar_eligible = 0;
  int ricci_uncertified = 0;
  const int draws = std::max(2, samples / 500);
  const auto double4 = load_builtin("double4");
  const auto fan6 = load_builtin("fan6");
  for (int i = 0; i < draws; ++i) {
    const auto tri = (i % 2 == 0) ? double4 : fan6;
    const MetricState st = s.admissible_state(tri, kRigidityTierMaxAngle);
    const Certificate ricci = rigidity_certificate(st, CertificateMode::ricci);
    worst = std::max(worst, ricci.lambda_max);
    if (!ricci.certified) ++ricci_uncertified;
    try {
      const Certificate scalar = rigidity_certificate(st, CertificateMode::scalar);
      ++scalar_eligible;
      worst = std::max(worst, scalar.lambda_max);
      if (scalar.certified) ++scalar_certified;
    } catch (const HypothesisFailed&) {
      // curvature sign condition fails at this state; not a certificate defect
    }
  }
  out.worst = worst;
  out.pass = worst < 0.0 && ricci_uncertified == 0 && scalar_certified == scalar_eligible;
  out.detail = "states=" + std::to_string(draws) +
               " ricci_uncertified=" + std::to_string(ricci_uncertified) +
               " scalar_eligible=" + std::to_string(scalar_eligible) +
               " scalar_certified=" + std::to_string(scalar_certified);
  return out;
}

SuiteResult solver_recovery(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  int converged = 0;
  int max_iters = 0;
  const int draws = std::max(3, samples / 1000);
  const auto double4 = load_builtin("double4");
  const auto fan6 = load_builtin("fan6");
  for (int i = 0; i < draws; ++i) {
    const auto tri = (i % 2 == 0) ? double4 : fan6;
    const MetricState truth = s.admissible_state(tri, kRigidityTierMaxAngle);
    const std::vector<double> target = scalar_curvature(truth);
    MetricState start = truth;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<double> r(truth.radii);
      for (double& x : r) x *= 1.0 + s.uniform(-0.1, 0.1);
      start = make_state(tri, truth.weights, std::move(r));
      if (start.admissible) break;
    }
    if (!start.admissible) continue;
    const SolveResult res = solve_prescribed_scalar(start, target);
    if (res.termination != Termination::converged) {
      out.pass = false;
      out.detail = "termination=" + termination_name(res.termination);
      continue;
    }
    ++converged;
    max_iters = std::max(max_iters, res.iterations);
    double err = 0.0;
    for (std::size_t v = 0; v < res.radii.size(); ++v) {
      err = std::max(err, std::abs(res.radii[v] - truth.radii[v]));
    }
    worst = std::max(worst, err);
  }
  out.worst = worst;
  out.pass = converged == draws && worst < 1e-8 && max_iters <= 30;
  out.detail = "converged=" + std::to_string(converged) + "/" + std::to_string(draws) +
               " max_iterations=" + std::to_string(max_iters) + " tol=1e-8";
  return out;
}

SuiteResult potential_path_independence(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  int used = 0;
  const int draws = std::max(2, samples / 2000);
  const auto tri = load_builtin("double4");
  for (int i = 0; i < draws; ++i) {
    try {
      const MetricState a = s.admissible_state(tri, kRigidityTierMaxAngle);
      const MetricState b = redraw_radii(s, a, 0.3, 3.0);
      const MetricState c = redraw_radii(s, a, 0.3, 3.0);
      const double direct = relative_potential(a, b);
      const double two_leg = relative_potential(a, c) + relative_potential(c, b);
      const double antisym = direct + relative_potential(b, a);
      worst = std::max({worst, std::abs(direct - two_leg), std::abs(antisym)});
      ++used;
    } catch (const PathLeavesAdmissible&) {
      // segment wandered out of the admissible set; draw a fresh triple
    }
  }
  out.worst = worst;
  out.pass = used > 0 && worst < 1e-6;
  out.detail = "paths=" + std::to_string(used) + "/" + std::to_string(draws) + " tol=1e-6";
  return out;
}

SuiteResult volume_potential_identity(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  int used = 0;
  const int draws = std::max(2, samples / 2000);
  const auto tri = load_builtin("double4");
  for (int i = 0; i < draws; ++i) {
    try {
      const MetricState a = s.admissible_state(tri, kRigidityTierMaxAngle);
      const MetricState b = redraw_radii(s, a, 0.3, 3.0);
      const double lhs = relative_potential(a, b);
      double rhs = 0.0;
      for (std::size_t e = 0; e < tri->edges.size(); ++e) {
        rhs += 2.0 * kPi * (b.lengths[e] - a.lengths[e]);
      }
      for (std::size_t tid = 0; tid < tri->tets.size(); ++tid) {
        const int t = static_cast<int>(tid);
        const TetLengths la = a.tet_lengths(t);
        const TetLengths lb = b.tet_lengths(t);
        rhs -= 2.0 * relative_volume(lb, la);
        const auto ba = dihedral_angles(la);
        const auto bb = dihedral_angles(lb);
        for (int slot = 0; slot < 6; ++slot) {
          rhs -= bb[slot] * lb.l[slot] - ba[slot] * la.l[slot];
        }
      }
      worst = std::max(worst, rel_diff(lhs, rhs));
      ++used;
    } catch (const PathLeavesAdmissible&) {
    }
  }
  out.worst = worst;
  out.pass = used > 0 && worst < 1e-7;
  out.detail = "pairs=" + std::to_string(used) + "/" + std::to_string(draws) + " tol=1e-7";
  return out;
}

SuiteResult volume_quadrature(Sampler& s, int samples) {
  SuiteResult out;
  double worst = 0.0;
  int used = 0;
  const int draws = std::max(2, samples / 2000);
  for (int i = 0; i < draws; ++i) {
    TetRadii r;
    TetWeights w;
    s.nondegenerate_tet(r, w, 1e-2);
    const TetLengths base = lengths_from_radii(r, w);
    TetLengths bumped = base;
    for (double& l : bumped.l) l *= 1.0 + s.uniform(-0.2, 0.2);
    if (!lengths_nondegenerate(bumped)) continue;
    try {
      const double forward = relative_volume(bumped, base);
      const double backward = relative_volume(base, bumped);
      const double coarse = relative_volume(bumped, base, 64);
      worst = std::max({worst, std::abs(forward + backward), std::abs(forward - coarse)});
      ++used;
    } catch (const PathLeavesAdmissible&) {
    }
  }
  out.worst = worst;
  out.pass = used > 0 && worst < 1e-9;
  out.detail = "pairs=" + std::to_string(used) + "/" + std::to_string(draws) + " tol=1e-9";
  return out;
}

SuiteResult determinism_stream(Sampler& s, int samples) {
  SuiteResult out;
  const std::uint64_t probe = s.engine()();
  Sampler a(probe);
  Sampler b(probe);
  double worst = 0.0;
  const int draws = std::min(samples, 1000);
  for (int i = 0; i < draws; ++i) {
    worst = std::max(worst, std::abs(a.uniform(0.0, 1.0) - b.uniform(0.0, 1.0)));
    worst = std::max(worst, std::abs(a.log_uniform(0.05, 5.0) - b.log_uniform(0.05, 5.0)));
  }
  TetRadii ra, rb;
  TetWeights wa, wb;
  a.nondegenerate_tet(ra, wa);
  b.nondegenerate_tet(rb, wb);
  for (int nu = 0; nu < 4; ++nu) worst = std::max(worst, std::abs(ra.r[nu] - rb.r[nu]));
  for (int slot = 0; slot < 6; ++slot) {
    worst = std::max(worst, std::abs(wa.cosines[slot] - wb.cosines[slot]));
  }
  out.worst = worst;
  out.pass = worst == 0.0;
  out.detail = "draws=" + std::to_string(draws) + " exact match required";
  return out;
}

struct SuiteSpec {
  const char* name;
  SuiteResult (*run)(Sampler&, int);
};

constexpr SuiteSpec kSuites[] = {
    {"pentagon-symmetry", pentagon_symmetry},
    {"pentagon-weight-monotone", pentagon_weight_monotone},
    {"pentagon-theta-derivative", pentagon_theta_derivative},
    {"hexagon-jet", hexagon_jet_suite},
    {"triangle-jet", triangle_jet_suite},
    {"thin-vertex-triangles", thin_vertex_triangles},
    {"q2-euler-identity", q2_euler_identity},
    {"q2-gradient-fd", q2_gradient_fd},
    {"q2-relabel-invariance", q2_relabel_invariance},
    {"discriminant-factorization", discriminant_factorization},
    {"apex-threshold-boundary", apex_threshold_boundary},
    {"tier-no-degeneracy", tier_no_degeneracy},
    {"degenerate-h-signs", degenerate_h_signs},
    {"oracle-agreement", oracle_agreement},
    {"dihedral-cross-apex", dihedral_cross_apex},
    {"dbeta-dl-shape", dbeta_dl_shape},
    {"dl-dr-jacobian", dl_dr_jacobian},
    {"hess-edge-kernel", hess_edge_kernel},
    {"hess-g-fd", hess_g_fd},
    {"negativity-certificates", negativity_certificates},
    {"solver-recovery", solver_recovery},
    {"potential-path-independence", potential_path_independence},
    {"volume-potential-identity", volume_potential_identity},
    {"volume-quadrature", volume_quadrature},
    {"determinism-stream", determinism_stream},
};

}  // namespace

std::vector<SuiteResult> run_verify_suites(std::uint64_t seed, int samples) {
  if (samples < 1) {
    throw DomainError("samples must be >= 1");
  }
  std::vector<SuiteResult> results;
  std::uint64_t index = 0;
  for (const SuiteSpec& spec : kSuites) {
    Sampler sampler(seed * 0x9E3779B97F4A7C15ULL + index);
    SuiteResult r = spec.run(sampler, samples);
    r.name = spec.name;
    results.push_back(std::move(r));
    ++index;
  }
  return results;
}

std::string verify_report_json(const std::vector<SuiteResult>& results,
                               std::uint64_t seed, int samples) {
  nlohmann::json doc;
  doc["seed"] = seed;
  doc["samples"] = samples;
  int passed = 0;
  nlohmann::json suites = nlohmann::json::array();
  for (const SuiteResult& r : results) {
    nlohmann::json item;
    item["name"] = r.name;
    item["pass"] = r.pass;
    item["worst_residual"] = r.worst;
    item["detail"] = r.detail;
    suites.push_back(item);
    if (r.pass) ++passed;
  }
  doc["suites"] = suites;
  doc["total"] = results.size();
  doc["passed"] = passed;
  doc["all_pass"] = passed == static_cast<int>(results.size());
  return doc.dump(2) + "\n";
}

std::string verify_report_csv(const std::vector<SuiteResult>& results) {
  std::ostringstream csv;
  csv << "name,pass,worst_residual,detail\n";
  for (const SuiteResult& r : results) {
    csv << r.name << "," << (r.pass ? "true" : "false") << "," << fmt(r.worst) << ","
        << r.detail << "\n";
  }
  return csv.str();
}

}  // namespace hyperpack
