#pragma once

#include <array>
#include <cstddef>

#include "circgeo/types.hpp"

namespace circgeo {

// Truncated second-order Taylor expansion of a scalar field of (X^1, X^2, X^3):
// value, gradient and the symmetric Hessian. The Hessian keeps its six
// independent entries only, so symmetry holds by construction.
class Jet2 {
 public:
  constexpr Jet2() = default;
  constexpr explicit Jet2(double value) : value_(value) {}
  constexpr Jet2(double value, const Vec3& grad) : value_(value), grad_(grad) {}
  Jet2(double value, const Vec3& grad, const Mat3& hess);

  // Jet of the coordinate function X^i (1-based) at p.
  static Jet2 variable(int i, const Point& p);
  static constexpr Jet2 constant(double c) { return Jet2(c); }

  constexpr double value() const { return value_; }
  constexpr const Vec3& grad() const { return grad_; }
  constexpr double grad(std::size_t i) const { return grad_[i]; }
  constexpr double hess(std::size_t i, std::size_t j) const { return hess_[packed_index(i, j)]; }
  Mat3 hess() const;

  bool is_finite() const;

  friend Jet2 operator+(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(const Jet2& a, const Jet2& b);
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(const Jet2& a);

  friend constexpr bool operator==(const Jet2&, const Jet2&) = default;

  // u(f) for a scalar function with u = f(v), u' and u'' supplied at v = value().
  Jet2 compose(double f, double df, double d2f) const;

 private:
  static constexpr std::size_t packed_index(std::size_t i, std::size_t j) {
    if (i > j) {
      const std::size_t t = i;
      i = j;
      j = t;
    }
    // (0,0) (0,1) (0,2) (1,1) (1,2) (2,2)
    return i == 0 ? j : (i == 1 ? 2 + j : 5);
  }

  double value_ = 0.0;
  Vec3 grad_{};
  std::array<double, 6> hess_{};
};

// Elementary functions on jets. Each throws DomainError ("jet_arith") when
// the value lies outside the domain where the function is twice differentiable.
Jet2 sqrt(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 pow(const Jet2& a, double exponent);
Jet2 pow(const Jet2& a, int exponent);

enum class JetOp { Add, Sub, Mul, Div, Pow, Sqrt, Exp, Log, Sin, Cos, Neg };

// Dispatch form of the operations above. Binary ops take two jets; Pow takes
// one jet and `exponent`; the rest take one jet.
Jet2 jet_arith(JetOp op, const Jet2* args, std::size_t count, double exponent = 0.0);

}  // namespace circgeo
