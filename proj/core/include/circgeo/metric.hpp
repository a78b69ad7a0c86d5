#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "circgeo/expr.hpp"
#include "circgeo/jet.hpp"
#include "circgeo/types.hpp"

namespace circgeo {

// The two functions A, B of the circulant metric
//
//        | A B B |
//   g =  | B A B |
//        | B B A |
//
// plus optional chart constraints, each of which must evaluate > 0.
struct MetricFunctions {
  ScalarFieldExpr A;
  ScalarFieldExpr B;
  std::vector<ScalarFieldExpr> domain_constraints;
};

struct MetricOptions {
  // Accept points where A > B > 0 fails but g is still positive definite.
  bool allow_weak_metric = false;
};

struct MetricAtPoint {
  Jet2 A;
  Jet2 B;
  Mat3 g{};
  Mat3 g_inv{};
  double D = 0.0;  // (A - B)(A + 2B)
  bool weak = false;

  double a() const { return A.value(); }
  double b() const { return B.value(); }
};

struct PositiveDefiniteReport {
  bool positive_definite = false;
  std::array<double, 3> minors{};  // A, (A-B)(A+B), (A-B)^2 (A+2B)
};

// Leading principal minors of the circulant matrix; reports only, does not
// enforce A > B > 0.
PositiveDefiniteReport check_positive_definite(double A, double B);

// Assembles g, its closed-form inverse and D at p.
// Throws PositivityViolation unless A > B > 0 (see MetricOptions), and
// DomainViolation if a chart constraint is <= 0.
MetricAtPoint metric_at(const MetricFunctions& m, const Point& p, const MetricOptions& options = {});

// Builds a MetricAtPoint from plain values of A and B (zero derivatives).
MetricAtPoint metric_from_values(double A, double B, const MetricOptions& options = {});

// g(x, y) = g_ij x^i y^j
double inner(const MetricAtPoint& M, const Vec3& x, const Vec3& y);

inline double norm(const MetricAtPoint& M, const Vec3& x) { return std::sqrt(inner(M, x, x)); }

}  // namespace circgeo
