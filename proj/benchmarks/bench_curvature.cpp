#include <benchmark/benchmark.h>

#include "circgeo/circgeo.hpp"

namespace {

using namespace circgeo;

const MetricFunctions& fields() {
  static const MetricFunctions m{
      parse("4 + (x1^2 + x2^2 + x3^2)/10 + sin(x1)*sin(x2)*sin(x3)/5"),
      parse("1 + (x1*x2^2 + x2*x3^2 + x3*x1^2)/20"),
      {},
  };
  return m;
}

const Point kP{{0.3, 0.2, -0.1}};

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse("4 + (x1^2 + x2^2 + x3^2)/10 + sin(x1)*sin(x2)*sin(x3)/5"));
}
BENCHMARK(BM_Parse);

void BM_EvalValue(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fields().A.value(kP));
}
BENCHMARK(BM_EvalValue);

void BM_EvalJet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fields().A.jet(kP));
}
BENCHMARK(BM_EvalJet);

void BM_Christoffel(benchmark::State& state) {
  const MetricAtPoint M = metric_at(fields(), kP);
  for (auto _ : state) benchmark::DoNotOptimize(christoffel(M));
}
BENCHMARK(BM_Christoffel);

void BM_Riemann(benchmark::State& state) {
  const MetricAtPoint M = metric_at(fields(), kP);
  const ChristoffelTable G = christoffel(M);
  for (auto _ : state) benchmark::DoNotOptimize(riemann(M, G));
}
BENCHMARK(BM_Riemann);

void BM_RiemannFromFields(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(riemann(fields(), kP));
}
BENCHMARK(BM_RiemannFromFields);

void BM_ClosedForm(benchmark::State& state) {
  const MetricAtPoint M = metric_at(fields(), kP);
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_components(M));
}
BENCHMARK(BM_ClosedForm);

void BM_IdentityCheck(benchmark::State& state) {
  const CurvatureTensor R = riemann(fields(), kP);
  for (auto _ : state) benchmark::DoNotOptimize(check_identity_R(R, 1e-9));
}
BENCHMARK(BM_IdentityCheck);

void BM_NablaQ(benchmark::State& state) {
  const ChristoffelTable G = christoffel(fields(), kP);
  for (auto _ : state) benchmark::DoNotOptimize(nabla_q(G));
}
BENCHMARK(BM_NablaQ);

}  // namespace
BENCHMARK_MAIN();
