#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "circgeo/errors.hpp"
#include "circgeo/jet.hpp"

using namespace circgeo;

namespace {

bool symmetric(const Jet2& j) {
  const Mat3 H = j.hess();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      if (H[i][k] != H[k][i]) return false;
  return true;
}

}  // namespace

TEST_CASE("variable jets") {
  const Jet2 x = Jet2::variable(1, Point{{2, -1, -1}});
  CHECK(x.value() == 2.0);
  CHECK(x.grad() == Vec3{1, 0, 0});
  CHECK(x.hess() == Mat3{});
  const Jet2 z = Jet2::variable(3, Point{{0, 0, 5}});
  CHECK(z.value() == 5.0);
  CHECK(z.grad() == Vec3{0, 0, 1});
  CHECK_THROWS_AS(Jet2::variable(4, Point{}), UsageError);
  CHECK_THROWS_AS(Jet2::variable(0, Point{}), UsageError);
}

TEST_CASE("jet_arith examples") {
  const Point p{{1.7, -0.4, 2.2}};
  const Jet2 args[2] = {Jet2::variable(1, p), Jet2::variable(2, p)};
  const Jet2 m = jet_arith(JetOp::Mul, args, 2);
  CHECK(m.value() == 1.7 * -0.4);
  CHECK(m.grad() == Vec3{-0.4, 1.7, 0});
  CHECK(m.hess(0, 1) == 1.0);
  CHECK(m.hess(0, 0) == 0.0);

  const Jet2 four = Jet2::constant(4);
  const Jet2 s = jet_arith(JetOp::Sqrt, &four, 1);
  CHECK(s.value() == 2.0);
  CHECK(s.grad() == Vec3{});
  CHECK(s.hess() == Mat3{});

  const Jet2 x = Jet2::variable(1, Point{{3, 0, 0}});
  const Jet2 xx[2] = {x, x};
  const Jet2 q = jet_arith(JetOp::Div, xx, 2);
  CHECK(q.value() == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < 3; ++i) {
    CHECK(std::fabs(q.grad(i)) < 1e-15);
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(q.hess(i, k)) < 1e-15);
  }
  CHECK_THROWS_AS(jet_arith(JetOp::Mul, args, 1), UsageError);
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(sqrt(Jet2::constant(-1)), DomainError);
  CHECK_THROWS_AS(sqrt(Jet2::constant(0)), DomainError);
  CHECK_THROWS_AS(log(Jet2::constant(0)), DomainError);
  CHECK_THROWS_AS(Jet2::constant(1) / Jet2::constant(0), DomainError);
  CHECK_THROWS_AS(pow(Jet2::constant(0), -1), DomainError);
  CHECK_THROWS_AS(pow(Jet2::constant(-2), 0.5), DomainError);
  // Integer exponents accept negative bases.
  const Jet2 x = Jet2::variable(1, Point{{-2, 0, 0}});
  const Jet2 c = pow(x, 3);
  CHECK(c.value() == -8.0);
  CHECK(c.grad(0) == 12.0);
  CHECK(c.hess(0, 0) == -12.0);
  CHECK(pow(x, 2.0).value() == 4.0);
}

TEST_CASE("unary ops match their Taylor expansion") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  using Op = std::function<Jet2(const Jet2&)>;
  using Scalar = std::function<double(double)>;
  const std::pair<Op, Scalar> ops[] = {
      {[](const Jet2& a) { return sqrt(a); }, [](double v) { return std::sqrt(v); }},
      {[](const Jet2& a) { return exp(a); }, [](double v) { return std::exp(v); }},
      {[](const Jet2& a) { return log(a); }, [](double v) { return std::log(v); }},
      {[](const Jet2& a) { return sin(a); }, [](double v) { return std::sin(v); }},
      {[](const Jet2& a) { return cos(a); }, [](double v) { return std::cos(v); }},
      {[](const Jet2& a) { return -a; }, [](double v) { return -v; }},
      {[](const Jet2& a) { return pow(a, 2.5); }, [](double v) { return std::pow(v, 2.5); }},
      {[](const Jet2& a) { return pow(a, -2); }, [](double v) { return std::pow(v, -2); }},
  };
  for (int trial = 0; trial < 50; ++trial) {
    // Inner field: a quadratic in x with value in [1, 3] near the base point.
    const double c0 = 2 + 0.5 * u(rng);
    const Vec3 g{u(rng), u(rng), u(rng)};
    Mat3 H{};
    for (int i = 0; i < 3; ++i)
      for (int k = i; k < 3; ++k) H[i][k] = H[k][i] = u(rng);
    const Jet2 j(c0, g, H);
    CHECK(symmetric(j));
    auto inner_at = [&](const Vec3& d) {
      double v = c0;
      for (int i = 0; i < 3; ++i) v += g[i] * d[i];
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) v += 0.5 * H[i][k] * d[i] * d[k];
      return v;
    };
    for (const auto& [op, f] : ops) {
      const Jet2 r = op(j);
      CHECK(symmetric(r));
      CHECK(r.is_finite());
      CHECK(r.value() == doctest::Approx(f(c0)).epsilon(1e-14));
      const double h = 1e-5, k = 1e-4;
      for (int a = 0; a < 3; ++a) {
        Vec3 dp{}, dm{};
        dp[a] = h;
        dm[a] = -h;
        CHECK(std::fabs(r.grad(a) - (f(inner_at(dp)) - f(inner_at(dm))) / (2 * h)) < 1e-6);
        for (int b = 0; b < 3; ++b) {
          auto at = [&](double sa, double sb) {
            Vec3 d{};
            d[a] += sa * k;
            d[b] += sb * k;
            return f(inner_at(d));
          };
          const double fd = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * k * k);
          CHECK(std::fabs(r.hess(a, b) - fd) < 1e-4);
        }
      }
    }
  }
}

TEST_CASE("algebraic laws") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2, 2);
  auto random_jet = [&] {
    Mat3 H{};
    for (int i = 0; i < 3; ++i)
      for (int k = i; k < 3; ++k) H[i][k] = H[k][i] = u(rng);
    return Jet2(u(rng), Vec3{u(rng), u(rng), u(rng)}, H);
  };
  for (int t = 0; t < 200; ++t) {
    const Jet2 a = random_jet(), b = random_jet(), c = random_jet();
    const Jet2 s1 = a + b, s2 = b + a;
    CHECK(s1.value() == s2.value());
    CHECK(s1.grad() == s2.grad());
    CHECK(s1.hess() == s2.hess());
    const Jet2 m1 = a * b, m2 = b * a;
    CHECK(m1.value() == m2.value());
    CHECK(m1.grad() == m2.grad());
    CHECK(m1.hess() == m2.hess());
    CHECK(symmetric(m1));
    CHECK(symmetric(a / (b * b + Jet2::constant(1))));
    const Jet2 l = (a * b) * c, r = a * (b * c);
    const double scale = 1 + std::fabs(l.value());
    CHECK(std::fabs(l.value() - r.value()) <= 1e-14 * scale * 8);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::fabs(l.grad(i) - r.grad(i)) <= 1e-13 * (1 + std::fabs(l.grad(i))) * 8);
      for (int k = 0; k < 3; ++k)
        CHECK(std::fabs(l.hess(i, k) - r.hess(i, k)) <= 1e-13 * (1 + std::fabs(l.hess(i, k))) * 8);
    }
  }
}
