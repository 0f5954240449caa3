#include "hyperpack/trunctet.hpp"

#include <cmath>
#include <string>

#include "hyperpack/errors.hpp"

namespace hyperpack {

namespace {

// The quadratic/half-gradient coefficients of Q2 in the t-variables.
// sq[nu] multiplies t_nu^2 and equals -(A_nu); pair(mu,nu) multiplies
// 2 t_mu t_nu. Written out per slot with cosines (a..f) = (01,02,03,12,13,23).
struct Q2Coefficients {
  std::array<double, 4> sq{};
  double pair[4][4] = {};
  double q3 = 0.0;
};

Q2Coefficients q2_coefficients(const TetWeights& w) {
  const double a = w.cosines[0], b = w.cosines[1], c = w.cosines[2];
  const double d = w.cosines[3], e = w.cosines[4], f = w.cosines[5];

  Q2Coefficients k;
  k.sq = {1 - d * d - e * e - f * f - 2 * d * e * f,
          1 - b * b - c * c - f * f - 2 * b * c * f,
          1 - a * a - c * c - e * e - 2 * a * c * e,
          1 - a * a - b * b - d * d - 2 * a * b * d};

  auto set = [&k](int m, int n, double value) {
    k.pair[m][n] = value;
    k.pair[n][m] = value;
  };
  set(0, 1, (1 - f * f) * a + b * d + c * e + b * e * f + c * d * f);
  set(0, 2, (1 - e * e) * b + a * d + c * f + a * e * f + c * d * e);
  set(0, 3, (1 - d * d) * c + a * e + b * f + a * d * f + b * d * e);
  set(1, 2, (1 - c * c) * d + a * b + e * f + a * c * f + b * c * e);
  set(1, 3, (1 - b * b) * e + a * c + d * f + a * b * f + b * c * d);
  set(2, 3, (1 - a * a) * f + b * c + d * e + a * b * e + a * c * d);

  k.q3 = 2 * a * b * e * f + 2 * a * c * d * f + 2 * b * c * d * e +
         2 * a * b * d + 2 * a * c * e + 2 * b * c * f + 2 * d * e * f +
         a * a + b * b + c * c + d * d + e * e + f * f -
         a * a * f * f - b * b * e * e - c * c * d * d - 1;
  return k;
}

void check_apex(int apex) {
  if (apex < 0 || apex > 3) {
    throw UnknownId("vertex index must be 0..3, got " + std::to_string(apex));
  }
}

void check_types(const TetRadii& radii, const TetWeights& weights) {
  if (!radii.valid()) {
    throw DomainError("radii must lie in (0, 50]");
  }
  if (!weights.valid()) {
    throw DomainError("weight cosines must lie in [0, 1]");
  }
}

std::array<int, 3> others_of(int apex) {
  std::array<int, 3> out{};
  int p = 0;
  for (int m = 0; m < 4; ++m) {
    if (m != apex) out[p++] = m;
  }
  return out;
}

// Sides of the vertex triangle at `apex` facing `other`: the two sides lying
// on hexagon faces through the edge (apex, other), then the opposite side.
struct ApexView {
  double p, q, o;           // triangle sides
  int sp, s_ac0, s_oc0;     // slots feeding p
  int s_ac1, s_oc1, s_cc;   // remaining slots (q uses sp, s_ac1, s_oc1; o uses s_ac0, s_ac1, s_cc)
};

ApexView apex_view(const TetLengths& L, int apex, int other) {
  int cd[2];
  int p = 0;
  for (int m = 0; m < 4; ++m) {
    if (m != apex && m != other) cd[p++] = m;
  }
  ApexView v{};
  v.sp = slot_index(apex, other);
  v.s_ac0 = slot_index(apex, cd[0]);
  v.s_ac1 = slot_index(apex, cd[1]);
  v.s_oc0 = slot_index(other, cd[0]);
  v.s_oc1 = slot_index(other, cd[1]);
  v.s_cc = slot_index(cd[0], cd[1]);
  v.p = hexagon_opposite_side(L.l[v.sp], L.l[v.s_ac0], L.l[v.s_oc0]);
  v.q = hexagon_opposite_side(L.l[v.sp], L.l[v.s_ac1], L.l[v.s_oc1]);
  v.o = hexagon_opposite_side(L.l[v.s_ac0], L.l[v.s_ac1], L.l[v.s_cc]);
  return v;
}

double dihedral_from_apex(const TetLengths& L, int apex, int other) {
  const ApexView v = apex_view(L, apex, other);
  try {
    return triangle_angle(v.p, v.q, v.o);
  } catch (const DegenerateTriangle& err) {
    throw DegenerateTetrahedron(std::string("vertex triangle at corner ") +
                                std::to_string(apex) + " collapsed: " + err.what());
  }
}

}  // namespace

int slot_index(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int s = 0; s < 6; ++s) {
    if (kSlots[s].first == a && kSlots[s].second == b) return s;
  }
  throw UnknownId("no slot for vertex pair (" + std::to_string(a) + ", " +
                  std::to_string(b) + ")");
}

TetWeights TetWeights::from_angles(const std::array<double, 6>& phi) {
  TetWeights w;
  for (int s = 0; s < 6; ++s) {
    if (!(phi[s] >= 0.0) || !(phi[s] <= 1.5707963267948966 + kEpsGeom)) {
      throw DomainError("weight angle out of [0, pi/2] at slot " + std::to_string(s));
    }
    w.cosines[s] = std::cos(phi[s]);
  }
  return w;
}

std::array<double, 6> TetWeights::angles() const {
  std::array<double, 6> phi{};
  for (int s = 0; s < 6; ++s) {
    phi[s] = std::acos(std::min(1.0, std::max(0.0, cosines[s])));
  }
  return phi;
}

bool TetWeights::valid() const {
  for (double c : cosines) {
    if (!(c >= 0.0 && c <= 1.0)) return false;
  }
  return true;
}

bool TetWeights::rigidity_tier() const {
  if (!valid()) return false;
  for (double c : cosines) {
    if (c < 1.0 / 3.0 - kEpsGeom) return false;
  }
  return true;
}

bool TetWeights::always_degenerate_pattern() const {
  // Opposite slot pairs: (01,23), (02,13), (03,12).
  static constexpr int kOpposite[3][2] = {{0, 5}, {1, 4}, {2, 3}};
  for (const auto& pair : kOpposite) {
    bool match = true;
    for (int s = 0; s < 6; ++s) {
      const bool on_pair = (s == pair[0] || s == pair[1]);
      const double want = on_pair ? 1.0 : 0.0;
      if (std::abs(cosines[s] - want) > kEpsGeom) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

bool TetRadii::valid() const {
  for (double rv : r) {
    if (!(rv > 0.0 && rv <= kMaxRadius)) return false;
  }
  return true;
}

std::array<double, 4> TetRadii::t() const {
  return {std::tanh(r[0]), std::tanh(r[1]), std::tanh(r[2]), std::tanh(r[3])};
}

bool lengths_exist(const TetRadii& radii, const TetWeights& weights) {
  check_types(radii, weights);
  const auto phi = weights.angles();
  for (int s = 0; s < 6; ++s) {
    const auto [va, vb] = kSlots[s];
    if (!pentagon_edge_exists(radii.r[va], radii.r[vb], phi[s])) return false;
  }
  return true;
}

TetLengths lengths_from_radii(const TetRadii& radii, const TetWeights& weights) {
  check_types(radii, weights);
  const auto phi = weights.angles();
  TetLengths out;
  for (int s = 0; s < 6; ++s) {
    const auto [va, vb] = kSlots[s];
    out.l[s] = pentagon_edge_length(radii.r[va], radii.r[vb], phi[s]);
  }
  return out;
}

std::array<double, 3> vertex_triangle_sides(const TetLengths& lengths, int apex) {
  check_apex(apex);
  const auto rest = others_of(apex);
  std::array<double, 3> out{};
  int idx = 0;
  for (int p = 0; p < 3; ++p) {
    for (int q = p + 1; q < 3; ++q) {
      out[idx++] = hexagon_opposite_side(lengths.l[slot_index(apex, rest[p])],
                                         lengths.l[slot_index(apex, rest[q])],
                                         lengths.l[slot_index(rest[p], rest[q])]);
    }
  }
  return out;
}

double q3(const TetWeights& weights) {
  if (!weights.valid()) {
    throw DomainError("weight cosines must lie in [0, 1]");
  }
  return q2_coefficients(weights).q3;
}

double q2(const TetRadii& radii, const TetWeights& weights) {
  check_types(radii, weights);
  const auto k = q2_coefficients(weights);
  const auto t = radii.t();
  double v = k.q3;
  for (int n = 0; n < 4; ++n) v += k.sq[n] * t[n] * t[n];
  for (int m = 0; m < 4; ++m) {
    for (int n = m + 1; n < 4; ++n) v += 2.0 * t[m] * t[n] * k.pair[m][n];
  }
  return v;
}

double q1(const TetRadii& radii, const TetWeights& weights) {
  double scale = 1.0;
  for (double rv : radii.r) {
    const double c = std::cosh(rv);
    scale *= c * c;
  }
  return q2(radii, weights) * scale;
}

std::array<double, 4> h_vector(const TetRadii& radii, const TetWeights& weights) {
  check_types(radii, weights);
  const auto k = q2_coefficients(weights);
  const auto t = radii.t();
  std::array<double, 4> h{};
  for (int n = 0; n < 4; ++n) {
    double s = t[n] * k.sq[n];
    for (int m = 0; m < 4; ++m) {
      if (m != n) s += t[m] * k.pair[m][n];
    }
    h[n] = s;
  }
  return h;
}

ApexQuadratic apex_quadratic(int apex, const TetRadii& radii, const TetWeights& weights) {
  check_apex(apex);
  check_types(radii, weights);
  const auto k = q2_coefficients(weights);
  const auto t = radii.t();
  const auto rest = others_of(apex);

  ApexQuadratic out;
  out.apex = apex;
  out.a = -k.sq[apex];
  out.b = 0.0;
  for (int m : rest) out.b -= 2.0 * t[m] * k.pair[m][apex];
  double c = k.q3;
  for (int m : rest) c += k.sq[m] * t[m] * t[m];
  for (int p = 0; p < 3; ++p) {
    for (int q = p + 1; q < 3; ++q) {
      c += 2.0 * t[rest[p]] * t[rest[q]] * k.pair[rest[p]][rest[q]];
    }
  }
  out.c = -c;
  out.delta = out.b * out.b - 4.0 * out.a * out.c;

  // Independent discriminant factorization: delta = 4 Q3 * bracket, where the
  // bracket reuses the quadratic form of the three non-apex corners with the
  // cosines relabeled among them.
  const double da = weights.cosines[slot_index(rest[0], rest[1])];
  const double ea = weights.cosines[slot_index(rest[0], rest[2])];
  const double fa = weights.cosines[slot_index(rest[1], rest[2])];
  const double a_apex = da * da + ea * ea + fa * fa + 2 * da * ea * fa - 1;
  const double bracket =
      a_apex + t[rest[0]] * t[rest[0]] * (1 - fa * fa) +
      t[rest[1]] * t[rest[1]] * (1 - ea * ea) +
      t[rest[2]] * t[rest[2]] * (1 - da * da) +
      2 * t[rest[0]] * t[rest[1]] * (da + ea * fa) +
      2 * t[rest[0]] * t[rest[2]] * (ea + da * fa) +
      2 * t[rest[1]] * t[rest[2]] * (fa + da * ea);
  const double rhs = 4.0 * k.q3 * bracket;
  out.f1_residual = std::abs(out.delta - rhs) /
                    std::max({1.0, std::abs(out.delta), std::abs(rhs)});
  return out;
}

std::optional<double> v_threshold(int apex, const TetRadii& radii, const TetWeights& weights) {
  const ApexQuadratic aq = apex_quadratic(apex, radii, weights);
  if (!(aq.a > 0.0) || !(aq.delta > 0.0)) return std::nullopt;
  return (-aq.b + std::sqrt(aq.delta)) / (2.0 * aq.a);
}

bool is_nondegenerate(const TetRadii& radii, const TetWeights& weights) {
  return q2(radii, weights) > kEpsGeom;
}

bool lengths_nondegenerate(const TetLengths& lengths) {
  for (double lv : lengths.l) {
    if (!(lv > 0.0)) return false;
  }
  for (int apex = 0; apex < 4; ++apex) {
    const auto x = vertex_triangle_sides(lengths, apex);
    if (!(x[0] + x[1] > x[2] && x[0] + x[2] > x[1] && x[1] + x[2] > x[0])) {
      return false;
    }
  }
  return true;
}

bool nondegeneracy_oracle(const TetRadii& radii, const TetWeights& weights) {
  if (!lengths_exist(radii, weights)) return false;
  return lengths_nondegenerate(lengths_from_radii(radii, weights));
}

std::array<double, 6> dihedral_angles(const TetLengths& lengths) {
  std::array<double, 6> beta{};
  for (int s = 0; s < 6; ++s) {
    const auto [va, vb] = kSlots[s];
    const double from_a = dihedral_from_apex(lengths, va, vb);
    const double from_b = dihedral_from_apex(lengths, vb, va);
    if (std::abs(from_a - from_b) > 1e-7) {
      throw CrossCheckFailure("dihedral angle at slot " + std::to_string(s) +
                              " differs between apex routes: " +
                              std::to_string(from_a) + " vs " + std::to_string(from_b));
    }
    beta[s] = 0.5 * (from_a + from_b);
  }
  return beta;
}

Eigen::Matrix<double, 4, 6> dl_dr(const TetRadii& radii, const TetWeights& weights) {
  check_types(radii, weights);
  const auto phi = weights.angles();
  Eigen::Matrix<double, 4, 6> m = Eigen::Matrix<double, 4, 6>::Zero();
  for (int s = 0; s < 6; ++s) {
    const auto [va, vb] = kSlots[s];
    m(va, s) = pentagon_cosh_theta(radii.r[va], radii.r[vb], phi[s]);
    m(vb, s) = pentagon_cosh_theta(radii.r[vb], radii.r[va], phi[s]);
  }
  return m;
}

Eigen::Matrix<double, 6, 6> dbeta_dl(const TetLengths& lengths) {
  Eigen::Matrix<double, 6, 6> jac = Eigen::Matrix<double, 6, 6>::Zero();
  for (int s = 0; s < 6; ++s) {
    const auto [va, vb] = kSlots[s];
    Eigen::Matrix<double, 1, 6> avg = Eigen::Matrix<double, 1, 6>::Zero();
    for (const auto [apex, other] : {std::pair{va, vb}, std::pair{vb, va}}) {
      const ApexView v = apex_view(lengths, apex, other);
      const HexJet jp = hexagon_opposite_side_jet(lengths.l[v.sp], lengths.l[v.s_ac0],
                                                  lengths.l[v.s_oc0]);
      const HexJet jq = hexagon_opposite_side_jet(lengths.l[v.sp], lengths.l[v.s_ac1],
                                                  lengths.l[v.s_oc1]);
      const HexJet jo = hexagon_opposite_side_jet(lengths.l[v.s_ac0], lengths.l[v.s_ac1],
                                                  lengths.l[v.s_cc]);
      TriJet tj{};
      try {
        tj = triangle_angle_jet(jp.x, jq.x, jo.x);
      } catch (const DegenerateTriangle& err) {
        throw DegenerateTetrahedron(std::string("vertex triangle at corner ") +
                                    std::to_string(apex) + " collapsed: " + err.what());
      }
      Eigen::Matrix<double, 1, 6> g = Eigen::Matrix<double, 1, 6>::Zero();
      g(v.sp) += tj.d_x1 * jp.d_la + tj.d_x2 * jq.d_la;
      g(v.s_ac0) += tj.d_x1 * jp.d_lb + tj.d_x3 * jo.d_la;
      g(v.s_oc0) += tj.d_x1 * jp.d_lopp;
      g(v.s_ac1) += tj.d_x2 * jq.d_lb + tj.d_x3 * jo.d_lb;
      g(v.s_oc1) += tj.d_x2 * jq.d_lopp;
      g(v.s_cc) += tj.d_x3 * jo.d_lopp;
      avg += 0.5 * g;
    }
    jac.row(s) = avg;
  }
  return jac;
}

Eigen::Matrix2d hess_edge_length(double r_i, double r_j, double phi) {
  const double l = pentagon_edge_length(r_i, r_j, phi);
  const double s = std::sin(phi);
  const double sl = std::sinh(l);
  const double factor = -(s * s) / (sl * sl * sl);
  Eigen::Matrix2d m;
  m(0, 0) = factor * std::cosh(l) * std::cosh(r_j) * std::cosh(r_j);
  m(1, 1) = factor * std::cosh(l) * std::cosh(r_i) * std::cosh(r_i);
  m(0, 1) = m(1, 0) = factor * std::cosh(r_i) * std::cosh(r_j);
  return m;
}

double relative_volume(const TetLengths& lengths, const TetLengths& reference, int steps) {
  if (steps < 1) {
    throw DomainError("steps must be >= 1");
  }
  Eigen::Matrix<double, 6, 1> delta;
  for (int s = 0; s < 6; ++s) delta(s) = lengths.l[s] - reference.l[s];

  auto point_at = [&](double u) {
    TetLengths p;
    for (int s = 0; s < 6; ++s) p.l[s] = reference.l[s] + u * delta(s);
    return p;
  };
  auto require_ok = [&](const TetLengths& p, double u) {
    if (!lengths_nondegenerate(p)) {
      throw PathLeavesAdmissible("length segment degenerates at parameter " +
                                 std::to_string(u));
    }
  };

  // 4-point Gauss-Legendre nodes/weights on [-1, 1].
  static constexpr double kNodes[4] = {-0.8611363115940526, -0.3399810435848563,
                                       0.3399810435848563, 0.8611363115940526};
  static constexpr double kWeights[4] = {0.3478548451374538, 0.6521451548625461,
                                         0.6521451548625461, 0.3478548451374538};

  require_ok(point_at(0.0), 0.0);
  require_ok(point_at(1.0), 1.0);

  double integral = 0.0;
  const double panel = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const double mid = (k + 0.5) * panel;
    require_ok(point_at(k * panel), k * panel);
    for (int g = 0; g < 4; ++g) {
      const double u = mid + 0.5 * panel * kNodes[g];
      const TetLengths p = point_at(u);
      require_ok(p, u);
      const Eigen::Matrix<double, 6, 6> jac = dbeta_dl(p);
      const Eigen::Matrix<double, 6, 1> dbeta_du = jac * delta;
      double sum = 0.0;
      for (int s = 0; s < 6; ++s) sum += p.l[s] * dbeta_du(s);
      integral += kWeights[g] * 0.5 * panel * sum;
    }
  }
  return -0.5 * integral;
}

}  // namespace hyperpack
