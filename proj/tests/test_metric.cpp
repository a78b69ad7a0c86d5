#include <doctest.h>

#include <cmath>
#include <random>

#include "circgeo/circgeo.hpp"

using namespace circgeo;

namespace {

MetricFunctions fields(const char* a, const char* b) { return MetricFunctions{parse(a), parse(b), {}}; }

Mat3 direct_inverse(const Mat3& g) {
  Mat3 r{};
  const double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                     g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                     g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      r[i][j] = (g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0]) / det;
    }
  return r;
}

}  // namespace

TEST_CASE("metric_at on the example fields") {
  const MetricAtPoint M = metric_at(fields("2*x1", "2*x1 + x2 + x3"), Point{{2, -1, -1}});
  CHECK(M.a() == 4.0);
  CHECK(M.b() == 2.0);
  CHECK(M.g == Mat3{{{4, 2, 2}, {2, 4, 2}, {2, 2, 4}}});
  CHECK(M.D == 16.0);
  CHECK_FALSE(M.weak);
}

TEST_CASE("constant fields") {
  const MetricAtPoint M = metric_at(fields("2", "1"), Point{{0.3, 7, -2}});
  CHECK(M.g == Mat3{{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}});
  CHECK(M.D == 4.0);
  CHECK(M.g_inv[0][0] == 0.75);
  CHECK(M.g_inv[0][1] == -0.25);
}

TEST_CASE("positivity and domain violations") {
  CHECK_THROWS_AS(metric_at(fields("1", "2"), Point{}), PositivityViolation);
  CHECK_THROWS_AS(metric_at(fields("2", "2"), Point{}), PositivityViolation);
  CHECK_THROWS_AS(metric_at(fields("2", "-1"), Point{}), PositivityViolation);
  CHECK_THROWS_AS(metric_from_values(1, 2), PositivityViolation);

  // Weak mode accepts positive definite g with B <= 0 (eigenvalues A - B and A + 2B).
  const MetricAtPoint w = metric_from_values(2, -0.5, MetricOptions{true});
  CHECK(w.weak);
  CHECK(w.D == 2.5);
  CHECK_THROWS_AS(metric_from_values(2, 2.5, MetricOptions{true}), PositivityViolation);
  CHECK_THROWS_AS(metric_from_values(1, 1, MetricOptions{true}), PositivityViolation);

  MetricFunctions m = fields("2*x1", "2*x1 + x2 + x3");
  m.domain_constraints.push_back(parse("-(x2 + x3)"));
  CHECK_THROWS_AS(metric_at(m, Point{{2, 1, 1}}), DomainViolation);
  try {
    metric_at(m, Point{{2, 1, 1}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainConstraint);
    CHECK(e.operation() == "metric_at");
  }
  CHECK_NOTHROW(metric_at(m, Point{{2, -1, -1}}));
}

TEST_CASE("check_positive_definite") {
  const auto r = check_positive_definite(4, 2);
  CHECK(r.positive_definite);
  CHECK(r.minors == std::array<double, 3>{4, 12, 32});
  const auto d = check_positive_definite(1, 1);
  CHECK_FALSE(d.positive_definite);
  CHECK(d.minors[1] == 0.0);
  // (2, -3) fails positive definiteness too: minors 2, -5, -100.
  const auto n = check_positive_definite(2, -3);
  CHECK_FALSE(n.positive_definite);
  CHECK(n.minors == std::array<double, 3>{2, -5, -100});
  // Positive definite with B < 0 is possible; the A > B > 0 condition is stricter.
  CHECK(check_positive_definite(2, -0.5).positive_definite);
  CHECK_THROWS_AS(metric_from_values(2, -0.5), PositivityViolation);
}

TEST_CASE("inner products") {
  const MetricAtPoint M = metric_from_values(4, 2);
  CHECK(inner(M, {1, 0, 0}, {1, 0, 0}) == 4.0);
  CHECK(inner(M, {1, 0, 0}, {0, 1, 0}) == 2.0);
  CHECK(inner(M, {1, 1, 1}, {1, 1, 1}) == 24.0);
}

TEST_CASE("random admissible metrics") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    const double B = 0.1 + 3 * (u(rng) + 1);
    const double A = B + 0.05 + 3 * (u(rng) + 1);
    const MetricAtPoint M = metric_from_values(A, B);
    CHECK(M.D > 0);
    const double det = (A - B) * (A - B) * (A + 2 * B);
    CHECK(std::fabs(M.D - det / (A - B)) <= 1e-10 * M.D);
    const Mat3 inv = direct_inverse(M.g);
    const Mat3 prod = multiply(M.g, M.g_inv);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(std::fabs(M.g_inv[i][j] - inv[i][j]) <= 1e-12 * (1 + std::fabs(inv[i][j])));
        CHECK(std::fabs(prod[i][j] - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
    for (int k = 0; k < 100; ++k) {
      const Vec3 x{u(rng), u(rng), u(rng)}, y{u(rng), u(rng), u(rng)};
      CHECK(std::fabs(inner(M, x, y) - inner(M, y, x)) <= 1e-14 * (A + 2 * B));
      CHECK(inner(M, x, x) > 0);
    }
  }
}
