#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace circgeo {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// A point of the coordinate chart (X^1, X^2, X^3).
struct Point {
  Vec3 x{};

  constexpr double operator[](std::size_t i) const { return x[i]; }
  constexpr double& operator[](std::size_t i) { return x[i]; }

  bool is_finite() const {
    return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
  }
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

inline constexpr Vec3 basis_vector(std::size_t i) {
  Vec3 e{};
  e[i] = 1.0;
  return e;
}

inline constexpr Vec3 scaled(const Vec3& v, double s) {
  return {v[0] * s, v[1] * s, v[2] * s};
}

inline double euclidean_norm(const Vec3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

inline constexpr Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace circgeo
