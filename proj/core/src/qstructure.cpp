#include "circgeo/qstructure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circgeo/errors.hpp"

namespace circgeo {

namespace {

void require_admissible(const char* operation, double A, double B) {
  if (!(A > B && B > 0.0))
    throw PositivityViolation(operation, "condition A > B > 0 violated: A=" + std::to_string(A) +
                                             ", B=" + std::to_string(B));
}

double closed_form_cos(double A, double B, double a, double b) {
  return -(B * a + (A + B) * b) / (A * a + 2.0 * B * b);
}

double cos_between(const MetricAtPoint& M, const Vec3& u, const Vec3& v) {
  return inner(M, u, v) / std::sqrt(inner(M, u, u) * inner(M, v, v));
}

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

}  // namespace

double isometry_residual(const MetricAtPoint& M, const Vec3& x, const Vec3& y) {
  return std::fabs(inner(M, apply_q(x), apply_q(y)) - inner(M, x, y));
}

double q_basis_determinant(const Vec3& x) {
  return std::fabs(3.0 * x[0] * x[1] * x[2] - (x[0] * x[0] * x[0] + x[1] * x[1] * x[1] + x[2] * x[2] * x[2]));
}

bool induces_q_basis(const Vec3& x) {
  const double n = euclidean_norm(x);
  return q_basis_determinant(x) > kQBasisRankTolerance * std::max(1.0, n * n * n);
}

AngleReport q_basis_angles(const MetricAtPoint& M, const Vec3& x) {
  if (!induces_q_basis(x)) throw NotAQBasis("q_basis_angles", "vector does not induce a q-basis");
  AngleReport r;
  r.a = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  r.b = x[0] * x[1] + x[0] * x[2] + x[1] * x[2];
  const double c = closed_form_cos(M.a(), M.b(), r.a, r.b);
  r.cos_phi_x_qx = c;
  r.cos_phi_x_q2x = -c;
  r.cos_theta_qx_q2x = c;

  const Vec3 qx = apply_q(x);
  const Vec3 q2x = apply_q2(x);
  r.cos_inner = {cos_between(M, x, qx), cos_between(M, x, q2x), cos_between(M, qx, q2x)};
  r.route_residual = std::max({std::fabs(r.cos_inner[0] - r.cos_phi_x_qx),
                               std::fabs(r.cos_inner[1] - r.cos_phi_x_q2x),
                               std::fabs(r.cos_inner[2] - r.cos_theta_qx_q2x)});
  r.angles = {clamped_acos(r.cos_phi_x_qx), clamped_acos(r.cos_phi_x_q2x),
              clamped_acos(r.cos_theta_qx_q2x)};
  return r;
}

double orthogonality_defect(double A, double B, const Vec3& x) {
  const double a = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  const double b = x[0] * x[1] + x[0] * x[2] + x[1] * x[2];
  return B * a + (A + B) * b;
}

double orthogonality_defect(const MetricAtPoint& M, const Vec3& x) {
  return orthogonality_defect(M.a(), M.b(), x);
}

Vec3 construct_orthogonal_vector(double A, double B) {
  require_admissible("construct_orthogonal_vector", A, B);
  return {0.0, -(A + B) + std::sqrt((A - B) * (A + 3.0 * B)), 2.0 * B};
}

Vec3 construct_special_angle_vector(double A, double B) {
  require_admissible("construct_special_angle_vector", A, B);
  const double lead = A - 2.0 * B;
  if (std::fabs(lead) < 1e-12) return {1.0, 0.0, 0.0};
  // (A-2B) t^2 - 2A t + (A-2B) = 0; the roots multiply to 1, so take the
  // cancellation-free one and its reciprocal.
  const double t_plus = (A + 2.0 * std::sqrt(B * (A - B))) / lead;
  for (const double t : {t_plus, 1.0 / t_plus}) {
    const Vec3 y{1.0, 0.0, t};
    if (induces_q_basis(y)) return y;
  }
  throw ConstructionFailed("construct_special_angle_vector",
                           "neither root of the angle equation induces a q-basis");
}

}  // namespace circgeo
