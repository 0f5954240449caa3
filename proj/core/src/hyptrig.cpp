#include "hyperpack/hyptrig.hpp"

#include <cmath>
#include <string>

#include "hyperpack/errors.hpp"

namespace hyperpack {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void check_radius(double r, const char* name) {
  if (!(r > 0.0) || !(r <= kMaxRadius)) {
    throw DomainError(std::string(name) + " must lie in (0, " +
                      std::to_string(kMaxRadius) + "], got " + std::to_string(r));
  }
}

void check_weight_angle(double phi) {
  if (!(phi >= 0.0) || !(phi <= kHalfPi + kEpsGeom)) {
    throw DomainError("weight angle must lie in [0, pi/2], got " + std::to_string(phi));
  }
}

double pentagon_argument(double r_i, double r_j, double phi) {
  return std::sinh(r_i) * std::sinh(r_j) +
         std::cos(phi) * std::cosh(r_i) * std::cosh(r_j);
}

}  // namespace

double acosh_clamped(double x, double tol) {
  if (!(x >= 1.0 - tol)) {
    throw DomainError("acosh argument " + std::to_string(x) + " below 1 - tol");
  }
  return std::acosh(std::max(x, 1.0));
}

bool pentagon_edge_exists(double r_i, double r_j, double phi) {
  check_radius(r_i, "r_i");
  check_radius(r_j, "r_j");
  check_weight_angle(phi);
  return pentagon_argument(r_i, r_j, phi) >= 1.0;
}

double pentagon_edge_length(double r_i, double r_j, double phi) {
  check_radius(r_i, "r_i");
  check_radius(r_j, "r_j");
  check_weight_angle(phi);
  const double arg = pentagon_argument(r_i, r_j, phi);
  if (!(arg >= 1.0 - kEpsGeom)) {
    throw DomainError("spheres of radii " + std::to_string(r_i) + ", " +
                      std::to_string(r_j) + " at angle " + std::to_string(phi) +
                      " admit no edge (cosh argument " + std::to_string(arg) + " < 1)");
  }
  return acosh_clamped(arg);
}

double pentagon_cosh_theta(double r_i, double r_j, double phi) {
  const double l = pentagon_edge_length(r_i, r_j, phi);
  const double sl = std::sinh(l);
  if (!(sl > kEpsGeom)) {
    throw DomainError("edge length vanishes; cosh(theta) undefined");
  }
  return (std::cosh(r_i) * std::sinh(r_j) +
          std::cos(phi) * std::sinh(r_i) * std::cosh(r_j)) / sl;
}

double hexagon_opposite_side(double l_a, double l_b, double l_opp) {
  if (!(l_a > 0.0) || !(l_b > 0.0) || !(l_opp > 0.0)) {
    throw DomainError("hexagon sides must be positive");
  }
  const double arg = (std::cosh(l_a) * std::cosh(l_b) + std::cosh(l_opp)) /
                     (std::sinh(l_a) * std::sinh(l_b));
  return acosh_clamped(arg);
}

double triangle_angle(double x_1, double x_2, double x_3) {
  if (!(x_1 > 0.0) || !(x_2 > 0.0) || !(x_3 > 0.0)) {
    throw DomainError("triangle sides must be positive");
  }
  const double c = (std::cosh(x_1) * std::cosh(x_2) - std::cosh(x_3)) /
                   (std::sinh(x_1) * std::sinh(x_2));
  if (!(c > -1.0 + kEpsGeom) || !(c < 1.0 - kEpsGeom)) {
    throw DegenerateTriangle("sides (" + std::to_string(x_1) + ", " +
                             std::to_string(x_2) + ", " + std::to_string(x_3) +
                             ") violate the strict triangle inequality");
  }
  return std::acos(c);
}

HexJet hexagon_opposite_side_jet(double l_a, double l_b, double l_opp) {
  HexJet jet{};
  jet.x = hexagon_opposite_side(l_a, l_b, l_opp);
  const double sa = std::sinh(l_a);
  const double sb = std::sinh(l_b);
  const double sx = std::sinh(jet.x);
  jet.d_lopp = std::sinh(l_opp) / (sa * sb * sx);
  jet.d_la = -(std::cosh(l_b) + std::cosh(l_a) * std::cosh(l_opp)) / (sa * sa * sb * sx);
  jet.d_lb = -(std::cosh(l_a) + std::cosh(l_b) * std::cosh(l_opp)) / (sb * sb * sa * sx);
  return jet;
}

TriJet triangle_angle_jet(double x_1, double x_2, double x_3) {
  TriJet jet{};
  jet.angle = triangle_angle(x_1, x_2, x_3);
  const double s1 = std::sinh(x_1);
  const double s2 = std::sinh(x_2);
  const double sa = std::sin(jet.angle);
  jet.d_x3 = std::sinh(x_3) / (sa * s1 * s2);
  jet.d_x1 = (std::cosh(x_2) - std::cosh(x_3) * std::cosh(x_1)) / (sa * s1 * s1 * s2);
  jet.d_x2 = (std::cosh(x_1) - std::cosh(x_3) * std::cosh(x_2)) / (sa * s2 * s2 * s1);
  return jet;
}

}  // namespace hyperpack
