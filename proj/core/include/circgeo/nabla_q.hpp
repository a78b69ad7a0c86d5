#pragma once

#include <array>

#include "circgeo/curvature.hpp"
#include "circgeo/metric.hpp"
#include "circgeo/qstructure.hpp"

namespace circgeo {

// nq[i][j][h] = nabla_i q_j^h = G_it^h q_j^t - G_ij^t q_t^h (q is constant).
struct NablaQTensor {
  Tensor3 nq{};
  double max_abs() const;
};

// M in grad A = grad B M.
inline constexpr IntMat3 kParallelMatrix = {{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}}};

NablaQTensor nabla_q(const ChristoffelTable& G);
NablaQTensor nabla_q(const MetricFunctions& m, const Point& p, const MetricOptions& options = {});

// grad A - grad B M, row-vector convention.
Vec3 parallel_condition_residual(const Jet2& A, const Jet2& B);
Vec3 parallel_condition_residual(const MetricFunctions& m, const Point& p);

// Max deviation over the nine Christoffel equalities implied by nabla q = 0.
double check_christoffel_equalities(const ChristoffelTable& G);
double check_christoffel_equalities(const MetricFunctions& m, const Point& p,
                                    const MetricOptions& options = {});

// max |d_k g_ij - G_ki^t g_tj - G_kj^t g_it|, zero for the Levi-Civita connection.
double metric_compatibility_residual(const MetricAtPoint& M, const ChristoffelTable& G);

}  // namespace circgeo
