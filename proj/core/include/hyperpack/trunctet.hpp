#pragma once

// Single truncated (hyper-ideal) tetrahedron geometry: edge lengths from
// vertex radii and edge weights, vertex triangles, the Q-polynomial
// admissibility machinery, dihedral angles, and the derivative matrices the
// curvature Hessian is assembled from.
//
// Vertices carry local indices 0..3; edges are identified by slots in the
// fixed order (01, 02, 03, 12, 13, 23).

#include <array>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "hyperpack/hyptrig.hpp"

namespace hyperpack {

inline constexpr std::array<std::pair<int, int>, 6> kSlots = {{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
}};

// Slot index of the edge between two distinct local vertices.
int slot_index(int a, int b);

// Six weight cosines in slot order. a = cos phi_01, ..., f = cos phi_23.
struct TetWeights {
  std::array<double, 6> cosines{};

  static TetWeights from_angles(const std::array<double, 6>& phi);
  std::array<double, 6> angles() const;

  // All cosines in [0, 1] (angles in [0, pi/2]).
  bool valid() const;
  // Stricter tier: all cosines in [1/3, 1] (angles in [0, arccos(1/3)]),
  // required by the rigidity statements.
  bool rigidity_tier() const;
  // Exactly one opposite-edge pair of cosines equals 1 with the remaining
  // four equal 0 (within kEpsGeom). Every radius vector degenerates there.
  bool always_degenerate_pattern() const;
};

struct TetRadii {
  std::array<double, 4> r{};

  bool valid() const;  // all in (0, kMaxRadius]
  std::array<double, 4> t() const;  // tanh of each radius
};

struct TetLengths {
  std::array<double, 6> l{};
};

// Coefficients of -Q2 read as a quadratic A t^2 + B t + C in t_apex
// (so Q2 <= 0 iff A t^2 + B t + C >= 0). delta = B^2 - 4AC by construction;
// f1_residual is the relative residual of the independently evaluated
// discriminant factorization delta = 4 Q3 * (bracket).
struct ApexQuadratic {
  int apex = 0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double delta = 0.0;
  double f1_residual = 0.0;
};

// True when every slot's length exists (the acosh argument is >= 1).
bool lengths_exist(const TetRadii& radii, const TetWeights& weights);

// Edge lengths per slot. Throws DomainError if any slot has no length.
TetLengths lengths_from_radii(const TetRadii& radii, const TetWeights& weights);

// Side lengths of the triangle truncating `apex`, one per pair {u, v} of the
// other three vertices in ascending pair order: x^apex_uv.
std::array<double, 3> vertex_triangle_sides(const TetLengths& lengths, int apex);

// The weight-only cubic invariant Q3.
double q3(const TetWeights& weights);

// The admissibility polynomial Q2 in the variables t_nu = tanh r_nu, and its
// unnormalized companion Q1 = Q2 * prod(cosh^2 r_nu).
double q2(const TetRadii& radii, const TetWeights& weights);
double q1(const TetRadii& radii, const TetWeights& weights);

// Half-gradient components: h_nu = (1/2) dQ2/dt_nu; Q2 = sum t_nu h_nu + Q3.
std::array<double, 4> h_vector(const TetRadii& radii, const TetWeights& weights);

// Quadratic-in-t_apex coefficients of -Q2, with the discriminant
// factorization cross-checked internally.
ApexQuadratic apex_quadratic(int apex, const TetRadii& radii, const TetWeights& weights);

// Lower boundary (-B + sqrt(delta)) / (2A) of the degenerate region at
// `apex` in the t-coordinate. Absent when A <= 0 or delta <= 0 (no region).
std::optional<double> v_threshold(int apex, const TetRadii& radii, const TetWeights& weights);

// Algebraic nondegeneracy predicate: Q2 > kEpsGeom.
bool is_nondegenerate(const TetRadii& radii, const TetWeights& weights);

// Independent geometric ground truth: the lengths exist and all four vertex
// triangles satisfy strict triangle inequalities.
bool nondegeneracy_oracle(const TetRadii& radii, const TetWeights& weights);

// Strict vertex-triangle check on explicit lengths.
bool lengths_nondegenerate(const TetLengths& lengths);

// Dihedral angle per slot. The angle at slot (a,b) is computed inside the
// vertex triangle at a and cross-checked inside the triangle at b; the two
// must agree within 1e-7 (CrossCheckFailure otherwise) and the average is
// returned. Throws DegenerateTetrahedron when a vertex triangle collapses.
std::array<double, 6> dihedral_angles(const TetLengths& lengths);

// 4x6 matrix of dl_slot/dr_vertex: row nu, column s carries cosh(theta) at
// the nu end when nu is an endpoint of slot s, else 0.
Eigen::Matrix<double, 4, 6> dl_dr(const TetRadii& radii, const TetWeights& weights);

// 6x6 analytic Jacobian of the dihedral angles with respect to the lengths,
// assembled by the chain rule through the hexagon and triangle laws and
// symmetrized over the two apex routes. Symmetric positive definite on
// nondegenerate tetrahedra.
Eigen::Matrix<double, 6, 6> dbeta_dl(const TetLengths& lengths);

// 2x2 Hessian of the edge length in (r_i, r_j):
//   -(sin^2 phi / sinh^3 l) * [[cosh l cosh^2 r_j, cosh r_i cosh r_j],
//                              [cosh r_i cosh r_j, cosh l cosh^2 r_i]].
// Zero when phi = 0; negative definite for phi in (0, pi/2].
Eigen::Matrix2d hess_edge_length(double r_i, double r_j, double phi);

// vol(lengths) - vol(reference), integrated as -(1/2) * integral of
// sum_s l_s dbeta_s along the straight segment in length space, with
// composite 4-point Gauss-Legendre quadrature over `steps` panels.
// Throws PathLeavesAdmissible when an intermediate point degenerates.
double relative_volume(const TetLengths& lengths, const TetLengths& reference, int steps = 256);

}  // namespace hyperpack
