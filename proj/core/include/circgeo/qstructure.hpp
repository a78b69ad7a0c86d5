#pragma once

#include <array>

#include "circgeo/metric.hpp"
#include "circgeo/types.hpp"

namespace circgeo {

using IntMat3 = std::array<std::array<int, 3>, 3>;

// Matrix of the structure q, (q_i^j). Acting on components it sends
// (x^1, x^2, x^3) to (-x^2, -x^3, -x^1).
inline constexpr IntMat3 kQMatrix = {{{0, -1, 0}, {0, 0, -1}, {-1, 0, 0}}};

inline constexpr IntMat3 multiply(const IntMat3& a, const IntMat3& b) {
  IntMat3 c{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline constexpr IntMat3 q_cubed() { return multiply(multiply(kQMatrix, kQMatrix), kQMatrix); }

inline constexpr Vec3 apply_q(const Vec3& x) { return {-x[1], -x[2], -x[0]}; }
inline constexpr Vec3 apply_q2(const Vec3& x) { return {x[2], x[0], x[1]}; }

// |g(qx, qy) - g(x, y)|
double isometry_residual(const MetricAtPoint& M, const Vec3& x, const Vec3& y);

inline constexpr double kQBasisRankTolerance = 1e-10;

// |3 x1 x2 x3 - (x1^3 + x2^3 + x3^3)|, the determinant of {x, qx, q^2 x} up to sign.
double q_basis_determinant(const Vec3& x);

// True iff {x, qx, q^2 x} is a basis.
bool induces_q_basis(const Vec3& x);

struct AngleReport {
  double a = 0.0;  // (x1)^2 + (x2)^2 + (x3)^2
  double b = 0.0;  // x1 x2 + x1 x3 + x2 x3
  // Closed-form cosines -(Ba + (A+B)b) / (Aa + 2Bb) and its negation.
  double cos_phi_x_qx = 0.0;
  double cos_phi_x_q2x = 0.0;
  double cos_theta_qx_q2x = 0.0;
  // The same cosines from g(u, v) / (|u|_g |v|_g).
  std::array<double, 3> cos_inner{};
  double route_residual = 0.0;
  // angle(x, qx), angle(x, q^2 x), angle(qx, q^2 x) in radians.
  std::array<double, 3> angles{};
};

// Throws NotAQBasis if x does not induce a q-basis.
AngleReport q_basis_angles(const MetricAtPoint& M, const Vec3& x);

// Ba + (A+B)b; zero iff {x, qx, q^2 x} is orthogonal.
double orthogonality_defect(const MetricAtPoint& M, const Vec3& x);
double orthogonality_defect(double A, double B, const Vec3& x);

// (0, -(A+B) + sqrt((A-B)(A+3B)), 2B), which induces an orthogonal q-basis.
Vec3 construct_orthogonal_vector(double A, double B);

// A vector y = (1, 0, t) with angle(y, qy) = 2pi/3 that induces a q-basis.
Vec3 construct_special_angle_vector(double A, double B);

}  // namespace circgeo
