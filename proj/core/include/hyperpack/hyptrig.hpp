#pragma once

// Scalar hyperbolic trigonometry kernels: the weighted two-sphere distance law
// (edge length from two radii and an intersection angle), the right-angled
// hexagon cosine law, the hyperbolic triangle cosine law, and their first
// derivatives. Everything downstream is assembled from these.

namespace hyperpack {

// Single tolerance knob for domain guards and degeneracy detection.
inline constexpr double kEpsGeom = 1e-12;

// Radii above this overflow products of sinh/cosh in double precision.
inline constexpr double kMaxRadius = 50.0;

// cosh^-1 with a guard band: exact 0 on [1 - tol, 1], DomainError below.
double acosh_clamped(double x, double tol = kEpsGeom);

// True when sinh(r_i)sinh(r_j) + cos(phi)cosh(r_i)cosh(r_j) >= 1, i.e. the
// edge length below exists. Fails routinely for phi near pi/2 at small radii.
bool pentagon_edge_exists(double r_i, double r_j, double phi);

// l = cosh^-1(sinh(r_i)sinh(r_j) + cos(phi)cosh(r_i)cosh(r_j)).
// Throws DomainError when the argument is below 1 or inputs are invalid
// (radii must lie in (0, kMaxRadius], phi in [0, pi/2]).
double pentagon_edge_length(double r_i, double r_j, double phi);

// cosh(theta_ij) = dl/dr_i = (cosh r_i sinh r_j + cos phi sinh r_i cosh r_j) / sinh l.
// Orientation matters: this is the factor attached at the r_i end.
double pentagon_cosh_theta(double r_i, double r_j, double phi);

// x = cosh^-1((cosh l_a cosh l_b + cosh l_opp) / (sinh l_a sinh l_b)).
// Always defined for positive inputs (the argument exceeds 1).
double hexagon_opposite_side(double l_a, double l_b, double l_opp);

// Interior angle between sides x_1, x_2 (opposite x_3):
// cos(alpha) = (cosh x_1 cosh x_2 - cosh x_3) / (sinh x_1 sinh x_2).
// Throws DegenerateTriangle when the strict triangle inequality fails.
double triangle_angle(double x_1, double x_2, double x_3);

// Value and partial derivatives of hexagon_opposite_side.
struct HexJet {
  double x;
  double d_la;
  double d_lb;
  double d_lopp;
};
HexJet hexagon_opposite_side_jet(double l_a, double l_b, double l_opp);

// Value and partial derivatives of triangle_angle.
struct TriJet {
  double angle;
  double d_x1;
  double d_x2;
  double d_x3;
};
TriJet triangle_angle_jet(double x_1, double x_2, double x_3);

}  // namespace hyperpack
