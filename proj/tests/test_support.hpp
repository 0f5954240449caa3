#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "hyperpack/trunctet.hpp"

// Independent dihedral-angle oracle through the hyperboloid model: the four
// truncation planes give a unit-diagonal Gram matrix with -cosh(l) off the
// diagonal. Factoring it through Minkowski space recovers the plane vectors,
// face poles fall out as nullspaces, and angles come from pole products.
// Shares no code with the hexagon/triangle route in the library.
namespace gram_oracle {

inline Eigen::Matrix4d gram(const hyperpack::TetLengths& lengths) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Identity();
  for (int slot = 0; slot < 6; ++slot) {
    const auto [a, b] = hyperpack::kSlots[slot];
    g(a, b) = g(b, a) = -std::cosh(lengths.l[slot]);
  }
  return g;
}

// Signature (3,1) is the realizability condition.
inline bool signature_ok(const Eigen::Matrix4d& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(g);
  const auto& ev = eig.eigenvalues();
  return ev[0] < 0.0 && ev[1] > 0.0 && ev[2] > 0.0 && ev[3] > 0.0;
}

inline double mdot(const Eigen::Vector4d& u, const Eigen::Vector4d& v) {
  return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

// Rows are the plane vectors, time coordinate in column 0.
inline Eigen::Matrix4d factor(const Eigen::Matrix4d& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(g);
  Eigen::Matrix4d rows;
  rows.col(0) = std::sqrt(-eig.eigenvalues()[0]) * eig.eigenvectors().col(0);
  for (int k = 1; k < 4; ++k) {
    rows.col(k) = std::sqrt(eig.eigenvalues()[k]) * eig.eigenvectors().col(k);
  }
  return rows;
}

// Outward unit pole of the face missing vertex p.
inline Eigen::Vector4d face_pole(const Eigen::Matrix4d& rows, int p) {
  Eigen::Matrix<double, 3, 4> m;
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != p) m.row(k++) = rows.row(i);
  }
  m.col(0) *= -1.0;
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(m, Eigen::ComputeFullV);
  Eigen::Vector4d n = svd.matrixV().col(3);
  n /= std::sqrt(mdot(n, n));
  if (mdot(n, rows.row(p).transpose()) > 0.0) n = -n;
  return n;
}

inline double dihedral(const Eigen::Matrix4d& rows, int a, int b) {
  std::array<int, 2> other{};
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != a && i != b) other[k++] = i;
  }
  const Eigen::Vector4d n1 = face_pole(rows, other[0]);
  const Eigen::Vector4d n2 = face_pole(rows, other[1]);
  return std::acos(std::clamp(-mdot(n1, n2), -1.0, 1.0));
}

inline std::array<double, 6> dihedral_angles(const hyperpack::TetLengths& lengths) {
  const Eigen::Matrix4d rows = factor(gram(lengths));
  std::array<double, 6> beta{};
  for (int slot = 0; slot < 6; ++slot) {
    const auto [a, b] = hyperpack::kSlots[slot];
    beta[slot] = dihedral(rows, a, b);
  }
  return beta;
}

}  // namespace gram_oracle

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}
