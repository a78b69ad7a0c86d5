#include "circgeo/jet.hpp"

#include <cmath>
#include <string>

#include "circgeo/errors.hpp"

namespace circgeo {

namespace {

[[noreturn]] void domain_failure(const char* function, double value, const char* why) {
  throw DomainError("jet_arith", std::string(function) + "(" + std::to_string(value) + ")", why);
}

bool is_integral(double r) {
  return std::trunc(r) == r && std::fabs(r) < 2147483647.0;
}

}  // namespace

Jet2::Jet2(double value, const Vec3& grad, const Mat3& hess) : value_(value), grad_(grad) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) hess_[packed_index(i, j)] = 0.5 * (hess[i][j] + hess[j][i]);
}

Jet2 Jet2::variable(int i, const Point& p) {
  if (i < 1 || i > 3)
    throw UsageError("variable_jet", "coordinate index " + std::to_string(i) + " out of range 1..3");
  const auto k = static_cast<std::size_t>(i - 1);
  return Jet2(p[k], basis_vector(k));
}

Mat3 Jet2::hess() const {
  Mat3 h{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) h[i][j] = hess(i, j);
  return h;
}

bool Jet2::is_finite() const {
  if (!std::isfinite(value_)) return false;
  for (double g : grad_)
    if (!std::isfinite(g)) return false;
  for (double h : hess_)
    if (!std::isfinite(h)) return false;
  return true;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.value_ = a.value_ + b.value_;
  for (std::size_t i = 0; i < 3; ++i) r.grad_[i] = a.grad_[i] + b.grad_[i];
  for (std::size_t k = 0; k < 6; ++k) r.hess_[k] = a.hess_[k] + b.hess_[k];
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.value_ = a.value_ - b.value_;
  for (std::size_t i = 0; i < 3; ++i) r.grad_[i] = a.grad_[i] - b.grad_[i];
  for (std::size_t k = 0; k < 6; ++k) r.hess_[k] = a.hess_[k] - b.hess_[k];
  return r;
}

Jet2 operator-(const Jet2& a) {
  Jet2 r;
  r.value_ = -a.value_;
  for (std::size_t i = 0; i < 3; ++i) r.grad_[i] = -a.grad_[i];
  for (std::size_t k = 0; k < 6; ++k) r.hess_[k] = -a.hess_[k];
  return r;
}

// Each sum is written as a pair of commuting terms so that a*b and b*a are
// bit-identical.
Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.value_ = a.value_ * b.value_;
  for (std::size_t i = 0; i < 3; ++i) r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      const std::size_t k = Jet2::packed_index(i, j);
      r.hess_[k] = (a.value_ * b.hess_[k] + b.value_ * a.hess_[k]) +
                   (a.grad_[i] * b.grad_[j] + b.grad_[i] * a.grad_[j]);
    }
  }
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.value_ == 0.0) domain_failure("div", b.value_, "division by zero");
  Jet2 r;
  const double q = a.value_ / b.value_;
  r.value_ = q;
  for (std::size_t i = 0; i < 3; ++i) r.grad_[i] = (a.grad_[i] - q * b.grad_[i]) / b.value_;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      const std::size_t k = Jet2::packed_index(i, j);
      r.hess_[k] = ((a.hess_[k] - q * b.hess_[k]) -
                    (r.grad_[i] * b.grad_[j] + b.grad_[i] * r.grad_[j])) /
                   b.value_;
    }
  }
  return r;
}

Jet2 Jet2::compose(double f, double df, double d2f) const {
  Jet2 r;
  r.value_ = f;
  for (std::size_t i = 0; i < 3; ++i) r.grad_[i] = df * grad_[i];
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      const std::size_t k = packed_index(i, j);
      r.hess_[k] = df * hess_[k] + d2f * (grad_[i] * grad_[j]);
    }
  }
  return r;
}

Jet2 sqrt(const Jet2& a) {
  const double v = a.value();
  if (!(v > 0.0)) domain_failure("sqrt", v, "square root needs a positive argument");
  const double s = std::sqrt(v);
  return a.compose(s, 0.5 / s, -0.25 / (s * v));
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value());
  return a.compose(e, e, e);
}

Jet2 log(const Jet2& a) {
  const double v = a.value();
  if (!(v > 0.0)) domain_failure("log", v, "logarithm needs a positive argument");
  return a.compose(std::log(v), 1.0 / v, -1.0 / (v * v));
}

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value());
  return a.compose(s, std::cos(a.value()), -s);
}

Jet2 cos(const Jet2& a) {
  const double c = std::cos(a.value());
  return a.compose(c, -std::sin(a.value()), -c);
}

Jet2 pow(const Jet2& a, int n) {
  const double v = a.value();
  if (n == 0) return Jet2(1.0);
  if (n == 1) return a;
  if (v == 0.0 && n < 0) domain_failure("pow", v, "negative power of zero");
  const double f = std::pow(v, n);
  const double df = n * std::pow(v, n - 1);
  const double d2f = static_cast<double>(n) * (n - 1) * std::pow(v, n - 2);
  return a.compose(f, df, d2f);
}

Jet2 pow(const Jet2& a, double r) {
  if (is_integral(r)) return pow(a, static_cast<int>(r));
  const double v = a.value();
  if (!(v > 0.0)) domain_failure("pow", v, "real power needs a positive base");
  return a.compose(std::pow(v, r), r * std::pow(v, r - 1.0), r * (r - 1.0) * std::pow(v, r - 2.0));
}

Jet2 jet_arith(JetOp op, const Jet2* args, std::size_t count, double exponent) {
  const bool binary = op == JetOp::Add || op == JetOp::Sub || op == JetOp::Mul || op == JetOp::Div;
  if (count != (binary ? 2u : 1u))
    throw UsageError("jet_arith", "wrong number of arguments: " + std::to_string(count));
  switch (op) {
    case JetOp::Add: return args[0] + args[1];
    case JetOp::Sub: return args[0] - args[1];
    case JetOp::Mul: return args[0] * args[1];
    case JetOp::Div: return args[0] / args[1];
    case JetOp::Pow: return pow(args[0], exponent);
    case JetOp::Sqrt: return sqrt(args[0]);
    case JetOp::Exp: return exp(args[0]);
    case JetOp::Log: return log(args[0]);
    case JetOp::Sin: return sin(args[0]);
    case JetOp::Cos: return cos(args[0]);
    case JetOp::Neg: return -args[0];
  }
  throw UsageError("jet_arith", "unknown operation");
}

}  // namespace circgeo
