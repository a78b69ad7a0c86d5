#include "circgeo/nabla_q.hpp"

#include <algorithm>
#include <cmath>

namespace circgeo {

double NablaQTensor::max_abs() const {
  double m = 0.0;
  for (const auto& a : nq)
    for (const auto& b : a)
      for (double v : b) m = std::max(m, std::fabs(v));
  return m;
}

NablaQTensor nabla_q(const ChristoffelTable& G) {
  NablaQTensor r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t h = 0; h < 3; ++h) {
        double s = 0.0;
        for (std::size_t t = 0; t < 3; ++t)
          s += G.gamma[i][t][h] * kQMatrix[j][t] - G.gamma[i][j][t] * kQMatrix[t][h];
        r.nq[i][j][h] = s;
      }
  return r;
}

NablaQTensor nabla_q(const MetricFunctions& m, const Point& p, const MetricOptions& options) {
  return nabla_q(christoffel(m, p, options));
}

Vec3 parallel_condition_residual(const Jet2& A, const Jet2& B) {
  Vec3 r{};
  for (std::size_t j = 0; j < 3; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += B.grad(i) * kParallelMatrix[i][j];
    r[j] = A.grad(j) - s;
  }
  return r;
}

Vec3 parallel_condition_residual(const MetricFunctions& m, const Point& p) {
  return parallel_condition_residual(m.A.jet(p), m.B.jet(p));
}

double check_christoffel_equalities(const ChristoffelTable& G) {
  // Pairs (i j h) = (i' j' h') of Gamma_ij^h, 1-based, as displayed with the
  // parallelism condition.
  static constexpr std::array<std::array<int, 6>, 9> kPairs = {{
      {1, 1, 3, 3, 2, 1},
      {1, 1, 2, 3, 2, 2},
      {1, 1, 3, 3, 2, 3},
      {2, 1, 2, 3, 3, 2},
      {2, 1, 1, 3, 3, 1},
      {2, 1, 3, 3, 3, 3},
      {2, 2, 1, 1, 3, 1},
      {2, 2, 2, 1, 3, 2},
      {2, 2, 3, 1, 3, 3},
  }};
  auto at = [&](int i, int j, int h) { return G.gamma[i - 1][j - 1][h - 1]; };
  double r = 0.0;
  for (const auto& e : kPairs) r = std::max(r, std::fabs(at(e[0], e[1], e[2]) - at(e[3], e[4], e[5])));
  return r;
}

double check_christoffel_equalities(const MetricFunctions& m, const Point& p,
                                    const MetricOptions& options) {
  return check_christoffel_equalities(christoffel(m, p, options));
}

double metric_compatibility_residual(const MetricAtPoint& M, const ChristoffelTable& G) {
  double r = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double s = i == j ? M.A.grad(k) : M.B.grad(k);
        for (std::size_t t = 0; t < 3; ++t)
          s -= G.gamma[k][i][t] * M.g[t][j] + G.gamma[k][j][t] * M.g[i][t];
        r = std::max(r, std::fabs(s));
      }
  return r;
}

}  // namespace circgeo
