#include <benchmark/benchmark.h>

#include "irsa/degree_dist.hpp"
#include "irsa/frame_sim.hpp"
#include "irsa/rng.hpp"
#include "irsa/scaling_law.hpp"

namespace {

// Generate-and-decode throughput at a waterfall load; the Monte Carlo
// harness spends essentially all of its time here.
void BM_GenerateAndDecode(benchmark::State& state) {
  const auto num_slots = static_cast<std::uint32_t>(state.range(0));
  const double load = static_cast<double>(state.range(1)) / 100.0;
  const auto dist = irsa::builtin_distribution("x3");

  irsa::rng r(1);
  irsa::frame_generator gen(num_slots, dist,
                            irsa::activity_model::poisson(load * num_slots));
  irsa::peeling_decoder decoder;
  irsa::frame_graph frame;

  std::uint64_t resolved = 0;
  for (auto _ : state) {
    gen.generate(r, frame);
    resolved += decoder.decode_counts(frame).resolved_users;
    benchmark::DoNotOptimize(resolved);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GenerateAndDecode)->Args({50, 70})->Args({200, 70})->Args({200, 90})->Args({1000, 70});

void BM_GenerateOnly(benchmark::State& state) {
  const auto num_slots = static_cast<std::uint32_t>(state.range(0));
  const auto dist = irsa::builtin_distribution("lambda2");
  irsa::rng r(1);
  irsa::frame_generator gen(num_slots, dist,
                            irsa::activity_model::poisson(0.7 * num_slots));
  irsa::frame_graph frame;
  for (auto _ : state) {
    gen.generate(r, frame);
    benchmark::DoNotOptimize(frame.num_edges());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GenerateOnly)->Arg(50)->Arg(200)->Arg(1000);

void BM_ExactEnumeration(benchmark::State& state) {
  const std::vector<std::uint32_t> degrees{2, 2, 2};
  double fer = 0.0;
  for (auto _ : state) {
    fer = irsa::exact_fer_small(static_cast<std::uint32_t>(state.range(0)), degrees);
    benchmark::DoNotOptimize(fer);
  }
}
BENCHMARK(BM_ExactEnumeration)->Arg(6)->Arg(10);

}  // namespace
