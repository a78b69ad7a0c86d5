#pragma once

#include <algorithm>
#include <array>

#include "circgeo/metric.hpp"
#include "circgeo/types.hpp"

namespace circgeo {

using Tensor3 = std::array<std::array<std::array<double, 3>, 3>, 3>;
using Tensor4 = std::array<Tensor3, 3>;

// All indices are 0-based in storage.
struct ChristoffelTable {
  Tensor3 gamma{};   // gamma[i][j][h] = Gamma_ij^h
  Tensor4 dgamma{};  // dgamma[k][i][j][h] = d_k Gamma_ij^h
};

// up[i][j][k][h] = R_ijk^h = d_j G_ik^h - d_k G_ij^h + G_ik^t G_tj^h - G_ij^t G_tk^h,
// the h-component of R(d_j, d_k) d_i.
// low[a][b][c][d] = R(e_a, e_b, e_c, e_d) = g(R(e_a, e_b) e_c, e_d).
struct CurvatureTensor {
  Tensor4 up{};
  Tensor4 low{};

  double max_abs() const;
};

struct ClosedFormComponents {
  double R1212 = 0.0;
  double R1313 = 0.0;
  double R2323 = 0.0;
  double R1213 = 0.0;
  double R1223 = 0.0;
  double R1323 = 0.0;

  std::array<double, 6> as_array() const { return {R1212, R1313, R2323, R1213, R1223, R1323}; }
};

inline constexpr std::array<const char*, 6> kComponentNames = {"R1212", "R1313", "R2323",
                                                               "R1213", "R1223", "R1323"};

ChristoffelTable christoffel(const MetricAtPoint& M);
ChristoffelTable christoffel(const MetricFunctions& m, const Point& p, const MetricOptions& options = {});

// d_k Gamma_ij^h by central differences of christoffel() with the given step;
// cross-check only.
Tensor4 christoffel_derivative_fd(const MetricFunctions& m, const Point& p, double step = 1e-5,
                                  const MetricOptions& options = {});

CurvatureTensor riemann(const MetricAtPoint& M, const ChristoffelTable& G);
CurvatureTensor riemann(const MetricFunctions& m, const Point& p, const MetricOptions& options = {});

// The six (0,4) components read off a numeric tensor.
ClosedFormComponents components_of(const CurvatureTensor& R);

// The six displayed closed-form expressions in A, B, their first and second
// partials and D = (A-B)(A+2B).
ClosedFormComponents closed_form_components(const MetricAtPoint& M);
ClosedFormComponents closed_form_components(const MetricFunctions& m, const Point& p,
                                            const MetricOptions& options = {});

struct SymmetryResiduals {
  double antisymmetry_first = 0.0;   // R_ijkh + R_jikh
  double antisymmetry_second = 0.0;  // R_ijkh + R_ijhk
  double pair_symmetry = 0.0;        // R_ijkh - R_khij
  double bianchi = 0.0;              // R_ijkh + R_jkih + R_kijh

  double max() const;
};

SymmetryResiduals symmetry_residuals(const CurvatureTensor& R);

// R(x, y, z, u) = R_ijkh x^i y^j z^k u^h
double riemann_apply(const CurvatureTensor& R, const Vec3& x, const Vec3& y, const Vec3& z,
                     const Vec3& u);

// mu(x, y) = R(x, y, x, y) / (g(x,x) g(y,y) - g(x,y)^2). Throws DegeneratePlane.
double sectional_curvature(const MetricAtPoint& M, const CurvatureTensor& R, const Vec3& x,
                           const Vec3& y);

struct IdentityRCheck {
  // Component route: R1212 = R1313 = R2323 and R1213 = R1323 = -R1223.
  bool holds = false;
  double diagonal_residual = 0.0;
  double off_diagonal_residual = 0.0;
  double scale = 0.0;  // 1 + max |component|
  // Direct route: max |R(qx,qy,qz,qu) - R(x,y,z,u)| / (|x||y||z||u|) over
  // sampled 4-tuples.
  bool direct_holds = false;
  double direct_residual = 0.0;

  bool routes_agree() const { return holds == direct_holds; }
  double residual() const { return std::max(diagonal_residual, off_diagonal_residual); }
};

inline constexpr int kIdentitySamples = 20;

IdentityRCheck check_identity_R(const CurvatureTensor& R, double tol);

bool is_flat(const CurvatureTensor& R, double tol);

struct TheoremOptions {
  double identity_tol = 1e-9;
  // When false, residuals are computed even if identity (R) fails at p.
  bool require_identity = true;
  MetricOptions metric{};
};

struct TheoremCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double bound = 0.0;  // 1e-8 (1 + |lhs|)
  double cos_phi = 0.0;
  bool pass() const { return residual <= bound; }
};

inline constexpr double kTheoremTolerance = 1e-8;

// mu(u,qu) - mu(x,qx) = 2cos(phi)/(1 - cos(phi)) R(x, qx, x, q^2 x) with
// {x, qx, q^2 x} orthonormal and phi = angle(u, qu).
TheoremCheck verify_theorem_mu_r(const MetricFunctions& m, const Point& p, const Vec3& u,
                                 const TheoremOptions& options = {});

// mu(u,qu) = (1+2cos)/(1-cos) mu(x,qx) - 3cos/(1-cos) mu(y,qy), angle(y,qy) = 2pi/3.
TheoremCheck verify_theorem_mu_r2(const MetricFunctions& m, const Point& p, const Vec3& u,
                                  const TheoremOptions& options = {});

struct EqualSectionalCheck {
  std::array<double, 3> mu{};         // mu(u,qu), mu(qu,q^2u), mu(q^2u,u)
  std::array<double, 2> residuals{};  // |mu0 - mu1|, |mu0 - mu2|
  double bound = 0.0;
  bool pass() const { return residuals[0] <= bound && residuals[1] <= bound; }
};

EqualSectionalCheck verify_equal_sectional(const MetricFunctions& m, const Point& p, const Vec3& u,
                                           const TheoremOptions& options = {});

}  // namespace circgeo
