#include <benchmark/benchmark.h>

#include "irsa/degree_dist.hpp"
#include "irsa/density_evolution.hpp"
#include "irsa/error_floor.hpp"
#include "irsa/scaling_law.hpp"

namespace {

void BM_FixedPoint(benchmark::State& state) {
  const auto dist = irsa::builtin_distribution("lambda2");
  const double load = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    const auto result = irsa::de_fixed_point(dist, load);
    benchmark::DoNotOptimize(result.q);
  }
}
BENCHMARK(BM_FixedPoint)->Arg(50)->Arg(84)->Arg(100);  // easy, near-threshold, plateau

void BM_Threshold(benchmark::State& state) {
  const auto dist = irsa::builtin_distribution("x3");
  for (auto _ : state) {
    const auto result = irsa::bp_threshold(dist, 1e-6);
    benchmark::DoNotOptimize(result.g_star);
  }
}
BENCHMARK(BM_Threshold);

void BM_Predict(benchmark::State& state) {
  const auto params = irsa::builtin_params("x3");
  double sum = 0.0;
  for (auto _ : state) {
    for (double g = 0.5; g < 1.0; g += 0.01) sum += irsa::fep_predict(200, g, params);
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_Predict);

void BM_FloorEstimate(benchmark::State& state) {
  const auto dist = irsa::builtin_distribution("lambda2");
  for (auto _ : state) {
    const auto floor = irsa::floor_estimate(dist, 200, 0.2);
    benchmark::DoNotOptimize(floor.plp_floor);
  }
}
BENCHMARK(BM_FloorEstimate);

}  // namespace
