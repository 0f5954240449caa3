// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit on any
// failure. Protocols and tolerances are pinned here and nowhere else.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <Eigen/Dense>

#include "hyperpack/complex.hpp"
#include "hyperpack/curvature.hpp"
#include "hyperpack/errors.hpp"
#include "hyperpack/hyptrig.hpp"
#include "hyperpack/sampling.hpp"
#include "hyperpack/solver.hpp"
#include "hyperpack/trunctet.hpp"

using namespace hyperpack;

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kHalfPi = 1.5707963267948966;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

std::shared_ptr<const Triangulation> builtin(const char* name) {
  return std::make_shared<Triangulation>(parse_triangulation(builtin_triangulation(name)));
}

double pentagon_arg(double r_i, double r_j, double phi) {
  return std::sinh(r_i) * std::sinh(r_j) + std::cos(phi) * std::cosh(r_i) * std::cosh(r_j);
}

double min_pentagon_arg(const MetricState& st) {
  double lo = 1e300;
  for (std::size_t e = 0; e < st.tri->edges.size(); ++e) {
    lo = std::min(lo, pentagon_arg(st.radii[static_cast<std::size_t>(st.tri->edges[e].v)],
                                   st.radii[static_cast<std::size_t>(st.tri->edges[e].w)],
                                   st.weights[e]));
  }
  return lo;
}

MetricState interior_state(Sampler& s, std::shared_ptr<const Triangulation> tri,
                           double arg_margin) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    MetricState st = s.admissible_state(tri, kRigidityTierMaxAngle);
    if (min_pentagon_arg(st) >= arg_margin) return st;
  }
  throw Error("interior state sampling exhausted its budget");
}

// 1. Sign of Q2 against the vertex-triangle oracle, guard band 1e-12,
//    10^5 samples, under 30 seconds.
Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Sampler s(101);
  int compared = 0;
  int disagreements = 0;
  for (int i = 0; i < 100000; ++i) {
    const TetRadii r = s.radii(0.05, 5.0);
    const TetWeights w = s.weights(kHalfPi);
    if (!lengths_exist(r, w)) continue;
    const double q = q2(r, w);
    if (std::abs(q) <= 1e-12) continue;
    ++compared;
    if ((q > 0.0) != lengths_nondegenerate(lengths_from_radii(r, w))) ++disagreements;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome out;
  out.pass = compared > 0 && disagreements == 0 && secs < 30.0;
  out.detail = "oracle equivalence: compared=" + std::to_string(compared) +
               " disagreements=" + std::to_string(disagreements) + " time=" + num(secs) +
               "s";
  return out;
}

// 2. Discriminant factorization residual < 1e-10 over 10^5 samples.
Outcome criterion2() {
  Sampler s(102);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const TetRadii r = s.radii(0.05, 5.0);
    const TetWeights w = s.weights(kHalfPi);
    const int apex = static_cast<int>(s.engine()() % 4);
    worst = std::max(worst, apex_quadratic(apex, r, w).f1_residual);
  }
  Outcome out;
  out.pass = worst < 1e-10;
  out.detail = "discriminant identity: worst residual=" + num(worst) + " tol=1e-10";
  return out;
}

// 3. The three degenerate weight patterns keep |Q2| < 1e-12 on a 10^4-point
//    radius grid.
Outcome criterion3() {
  static constexpr int kOpposite[3][2] = {{0, 5}, {1, 4}, {2, 3}};
  double worst = 0.0;
  for (int pick = 0; pick < 3; ++pick) {
    TetWeights w;
    w.cosines = {0, 0, 0, 0, 0, 0};
    w.cosines[kOpposite[pick][0]] = 1.0;
    w.cosines[kOpposite[pick][1]] = 1.0;
    std::array<double, 10> grid{};
    for (int k = 0; k < 10; ++k) {
      grid[static_cast<std::size_t>(k)] =
          0.05 * std::pow(50.0 / 0.05, k / 9.0);
    }
    for (double r0 : grid) {
      for (double r1 : grid) {
        for (double r2 : grid) {
          for (double r3 : grid) {
            TetRadii r;
            r.r = {r0, r1, r2, r3};
            worst = std::max(worst, std::abs(q2(r, w)));
          }
        }
      }
    }
  }
  Outcome out;
  out.pass = worst < 1e-12;
  out.detail = "degenerate patterns: max |Q2|=" + num(worst) + " over 3x10^4 grid points";
  return out;
}

// 4. Constant weights with cosine 1/3..1 are nondegenerate at every sampled
//    radius vector.
Outcome criterion4() {
  Sampler s(104);
  int failures = 0;
  for (double c : {1.0 / 3.0, 0.4, 0.5, 0.75, 1.0}) {
    TetWeights w;
    w.cosines = {c, c, c, c, c, c};
    for (int i = 0; i < 10000; ++i) {
      const TetRadii r = s.radii(0.05, 50.0);
      if (!is_nondegenerate(r, w)) ++failures;
    }
  }
  Outcome out;
  out.pass = failures == 0;
  out.detail = "constant-weight admissibility: failures=" + std::to_string(failures) +
               "/50000";
  return out;
}

// 5. Trichotomy on degenerate samples with weight angles in
//    [0, arccos(1/3)]^6: needs >= 10^3 degenerate configurations found by
//    rejection. The tier keeps Q2 strictly positive, so none exist.
Outcome criterion5() {
  Sampler s(105);
  const int budget = 2000000;
  int found = 0;
  int trichotomy_failures = 0;
  double min_q2 = 1e300;
  for (int i = 0; i < budget; ++i) {
    const TetRadii r = s.radii(0.05, 50.0);
    const TetWeights w = s.weights(kRigidityTierMaxAngle);
    const double q = q2(r, w);
    min_q2 = std::min(min_q2, q);
    if (q > kEpsGeom) continue;
    ++found;
    auto h = h_vector(r, w);
    std::sort(h.begin(), h.end());
    if (!(h[0] < 0.0 && h[1] > 0.0)) ++trichotomy_failures;
  }
  Outcome out;
  out.pass = found >= 1000 && trichotomy_failures == 0;
  out.detail = "tier degenerate census: found=" + std::to_string(found) + "/" +
               std::to_string(budget) + " (need 1000); min Q2=" + num(min_q2) +
               " stays positive, the tier admits no degenerate radius vector";
  return out;
}

// 6. dbeta_dl is symmetric positive definite and matches finite differences.
Outcome criterion6() {
  Sampler s(106);
  const double h = 1e-5;
  double worst_asym = 0.0;
  double worst_fd = 0.0;
  double min_eig = 1e300;
  for (int i = 0; i < 1000; ++i) {
    TetRadii r;
    TetWeights w;
    s.nondegenerate_tet(r, w, 1e-2);
    const TetLengths lengths = lengths_from_radii(r, w);
    const Eigen::Matrix<double, 6, 6> m = dbeta_dl(lengths);
    worst_asym = std::max(worst_asym, (m - m.transpose()).cwiseAbs().maxCoeff());
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
        worst_fd = std::max(worst_fd, rel((bp[t] - bm[t]) / (2.0 * h), m(t, slot)));
      }
    }
  }
  Outcome out;
  out.pass = worst_asym < 1e-8 && min_eig > 0.0 && worst_fd < 1e-6;
  out.detail = "angle jacobian: asym=" + num(worst_asym) + " min_eig=" + num(min_eig) +
               " fd=" + num(worst_fd) + " over 1000 tets";
  return out;
}

// 7. Derivative stack against finite differences on 200 admissible states.
Outcome criterion7() {
  Sampler s(107);
  const double h1 = 1e-5;
  const double h2 = 1e-4;
  double worst = 0.0;
  const auto double4 = builtin("double4");
  const auto fan6 = builtin("fan6");
  int hess_edges = 0;
  for (int i = 0; i < 200; ++i) {
    const auto tri = (i % 2 == 0) ? double4 : fan6;
    const MetricState st = interior_state(s, tri, 1.01);

    for (std::size_t e = 0; e < tri->edges.size(); ++e) {
      const double ri = st.radii[static_cast<std::size_t>(tri->edges[e].v)];
      const double rj = st.radii[static_cast<std::size_t>(tri->edges[e].w)];
      const double phi = st.weights[e];
      const double fd = (pentagon_edge_length(ri + h1, rj, phi) -
                         pentagon_edge_length(ri - h1, rj, phi)) / (2.0 * h1);
      worst = std::max(worst, rel(fd, pentagon_cosh_theta(ri, rj, phi)));
      // Second-order differences need more room from the existence boundary.
      if (pentagon_arg(ri, rj, phi) >= 1.2) {
        ++hess_edges;
        const Eigen::Matrix2d m = hess_edge_length(ri, rj, phi);
        auto len = [&](double a, double b) { return pentagon_edge_length(a, b, phi); };
        const double d11 = (len(ri + h2, rj) - 2.0 * len(ri, rj) + len(ri - h2, rj)) /
                           (h2 * h2);
        const double d12 = (len(ri + h2, rj + h2) - len(ri + h2, rj - h2) -
                            len(ri - h2, rj + h2) + len(ri - h2, rj - h2)) /
                           (4.0 * h2 * h2);
        worst = std::max({worst, rel(d11, m(0, 0)), rel(d12, m(0, 1))});
      }
    }

    for (std::size_t tid = 0; tid < tri->tets.size(); ++tid) {
      const int t = static_cast<int>(tid);
      const TetRadii r = st.tet_radii(t);
      const TetWeights w = st.tet_weights(t);
      const Eigen::Matrix<double, 4, 6> m = dl_dr(r, w);
      for (int nu = 0; nu < 4; ++nu) {
        TetRadii rp = r, rm = r;
        rp.r[nu] += h1;
        rm.r[nu] -= h1;
        const TetLengths lp = lengths_from_radii(rp, w);
        const TetLengths lm = lengths_from_radii(rm, w);
        for (int slot = 0; slot < 6; ++slot) {
          worst = std::max(worst, rel((lp.l[slot] - lm.l[slot]) / (2.0 * h1), m(nu, slot)));
        }
      }
    }

    const Eigen::MatrixXd hg = hess_G(st);
    const double scale = std::max(1.0, hg.cwiseAbs().maxCoeff());
    for (int v = 0; v < tri->vertex_count; ++v) {
      std::vector<double> rp = st.radii, rm = st.radii;
      rp[static_cast<std::size_t>(v)] += h1;
      rm[static_cast<std::size_t>(v)] -= h1;
      const auto kp = scalar_curvature(make_state(tri, st.weights, std::move(rp)));
      const auto km = scalar_curvature(make_state(tri, st.weights, std::move(rm)));
      for (int u = 0; u < tri->vertex_count; ++u) {
        const double fd = (kp[static_cast<std::size_t>(u)] -
                           km[static_cast<std::size_t>(u)]) / (2.0 * h1);
        worst = std::max(worst, std::abs(fd - hg(u, v)) / scale);
      }
    }
  }
  Outcome out;
  out.pass = worst < 1e-5 && hess_edges > 0;
  out.detail = "derivative stack: worst fd residual=" + num(worst) +
               " over 200 states, tol=1e-5";
  return out;
}

// 8. Regular double4 cross-check. The pinned values below come from a
//    50-digit evaluation of the closed forms (l = 2, equilateral truncation
//    triangles); they differ from round-number folklore in the fourth
//    decimal, and the structural identity settles which is right.
Outcome criterion8() {
  const auto tri = builtin("double4");
  const MetricState st =
      make_state(tri, std::vector<double>(6, 0.0), std::vector<double>(4, 1.0));
  const CurvatureReport rep = curvature_report(st);
  double worst_edge = 0.0;
  for (double k : rep.edge_ricci) {
    worst_edge = std::max(worst_edge, std::abs(k - 4.3708017940474442114));
  }
  double worst_vertex = 0.0;
  for (double k : rep.vertex_scalar) {
    worst_vertex = std::max(worst_vertex, std::abs(k - 13.112405382142332634));
  }
  const auto beta = dihedral_angles(st.tet_lengths(0));
  const double identity = 4.0 * kPi + 2.0 * (kPi - 3.0 * beta[0]);
  const double worst_id = std::abs(rep.vertex_scalar[0] - identity);
  Outcome out;
  out.pass = worst_edge < 1e-5 && worst_vertex < 1e-5 && worst_id < 1e-5;
  out.detail = "regular double4: edge K err=" + num(worst_edge) +
               " vertex K err=" + num(worst_vertex) + " identity err=" + num(worst_id);
  return out;
}

// 9. Certificates on 100 tier states whose curvature sign condition holds.
Outcome criterion9() {
  Sampler s(109);
  const auto double4 = builtin("double4");
  const auto fan6 = builtin("fan6");
  int scalar_ok = 0;
  int ricci_ok = 0;
  int draws = 0;
  int kept = 0;
  while (kept < 100 && draws < 100000) {
    const auto tri = (draws % 2 == 0) ? double4 : fan6;
    ++draws;
    const MetricState st = s.admissible_state(tri, kRigidityTierMaxAngle);
    const Certificate ricci = rigidity_certificate(st, CertificateMode::ricci);
    if (ricci.certified && ricci.lambda_max < 0.0) ++ricci_ok;
    Certificate scalar;
    try {
      scalar = rigidity_certificate(st, CertificateMode::scalar);
    } catch (const HypothesisFailed&) {
      continue;  // sign condition fails; not one of the 100
    }
    ++kept;
    if (scalar.certified && scalar.lambda_max < 0.0) ++scalar_ok;
  }
  Outcome out;
  out.pass = kept == 100 && scalar_ok == 100 && ricci_ok == draws;
  out.detail = "certificates: scalar " + std::to_string(scalar_ok) +
               "/100, ricci " + std::to_string(ricci_ok) + "/" + std::to_string(draws) +
               " draws (sign condition unfiltered)";
  return out;
}

// 10. Fifty construct-and-recover trials plus double-start agreement.
Outcome criterion10() {
  Sampler s(110);
  const auto double4 = builtin("double4");
  const auto fan6 = builtin("fan6");
  int recovered = 0;
  int max_iters = 0;
  double worst_err = 0.0;
  double worst_gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto tri = (i % 2 == 0) ? double4 : fan6;
    const MetricState truth = s.admissible_state(tri, kRigidityTierMaxAngle);
    const auto target = scalar_curvature(truth);
    auto start_state = [&]() -> MetricState {
      for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> r(truth.radii);
        for (double& x : r) x *= 1.0 + s.uniform(-0.1, 0.1);
        MetricState st = make_state(tri, truth.weights, std::move(r));
        if (st.admissible) return st;
      }
      throw Error("perturbation never landed admissible");
    };
    const SolveResult a = solve_prescribed_scalar(start_state(), target);
    if (a.termination != Termination::converged || a.iterations > 30) continue;
    double err = 0.0;
    for (std::size_t v = 0; v < a.radii.size(); ++v) {
      err = std::max(err, std::abs(a.radii[v] - truth.radii[v]));
    }
    if (err >= 1e-8) continue;
    ++recovered;
    max_iters = std::max(max_iters, a.iterations);
    worst_err = std::max(worst_err, err);
    if (i % 5 == 0) {
      const SolveResult b = solve_prescribed_scalar(start_state(), target);
      if (b.termination == Termination::converged) {
        for (std::size_t v = 0; v < a.radii.size(); ++v) {
          worst_gap = std::max(worst_gap, std::abs(a.radii[v] - b.radii[v]));
        }
      } else {
        worst_gap = 1.0;
      }
    }
  }
  Outcome out;
  out.pass = recovered == 50 && worst_gap < 1e-7;
  out.detail = "solver recovery: " + std::to_string(recovered) +
               "/50, max iterations=" + std::to_string(max_iters) +
               " worst error=" + num(worst_err) + " double-start gap=" + num(worst_gap);
  return out;
}

// 11. Volume path independence around 50 waypoint triangles.
Outcome criterion11() {
  Sampler s(111);
  double worst_loop = 0.0;
  double worst_anti = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::array<TetLengths, 3> pts;
    for (auto& lengths : pts) {
      TetRadii r;
      TetWeights w;
      s.nondegenerate_tet(r, w, 5e-2, 0.3, 2.0);
      lengths = lengths_from_radii(r, w);
    }
    const double loop = relative_volume(pts[0], pts[1]) + relative_volume(pts[1], pts[2]) +
                        relative_volume(pts[2], pts[0]);
    worst_loop = std::max(worst_loop, std::abs(loop));
    worst_anti = std::max(
        worst_anti,
        std::abs(relative_volume(pts[0], pts[1]) + relative_volume(pts[1], pts[0])));
  }
  Outcome out;
  out.pass = worst_loop < 1e-6 && worst_anti < 1e-9;
  out.detail = "volume integrability: loop=" + num(worst_loop) +
               " antisymmetry=" + num(worst_anti) + " over 50 triangles";
  return out;
}

// 12. Byte-identical verify reports for a fixed seed.
Outcome criterion12() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hyperpack_acceptance";
  fs::create_directories(dir);
  const fs::path out1 = dir / "verify1.json";
  const fs::path out2 = dir / "verify2.json";
  auto run = [&](const fs::path& out_path) -> int {
    const std::string cmd = std::string(CLI_PATH) + " verify --seed 0 --out " +
                            out_path.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const int rc1 = run(out1);
  const int rc2 = run(out2);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string a = slurp(out1);
  const std::string b = slurp(out2);
  Outcome out;
  out.pass = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  out.detail = std::string("determinism: exit codes ") + std::to_string(rc1) + "," +
               std::to_string(rc2) + (a == b ? ", reports byte-identical" : ", reports differ");
  return out;
}

}  // namespace

int main() {
  const std::array<Outcome (*)(), 12> criteria = {
      criterion1, criterion2, criterion3,  criterion4,  criterion5,  criterion6,
      criterion7, criterion8, criterion9,  criterion10, criterion11, criterion12,
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome out = criteria[i]();
    if (!out.pass) ++failures;
    std::printf("criterion %2zu: %s  %s\n", i + 1, out.pass ? "PASS" : "FAIL",
                out.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of 12 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
