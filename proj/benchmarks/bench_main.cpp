#include <benchmark/benchmark.h>

#include "projdim/ergodic.hpp"
#include "projdim/linalg.hpp"
#include "projdim/pressure.hpp"
#include "projdim/projective.hpp"

using namespace projdim;

static void BM_SingularValues(benchmark::State& state) {
  const auto sys = rauzy_gamma_system(3);
  const Matrix3 a = sys.effective_product(std::vector<Letter>{0, 5, 11, 2, 7});
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(a));
}
BENCHMARK(BM_SingularValues);

static void BM_PartitionSum(benchmark::State& state) {
  const auto sys = rauzy_gamma_system(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(partition_sum(sys, 1.5, 3));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(word_count(sys.size(), 3)));
}
BENCHMARK(BM_PartitionSum)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_AffinityDimension(benchmark::State& state) {
  const auto sys = rauzy_gamma_system(5);
  for (auto _ : state) benchmark::DoNotOptimize(affinity_dimension(sys, 1e-3, 3));
}
BENCHMARK(BM_AffinityDimension)->Unit(benchmark::kMillisecond);

static void BM_ChaosGame(benchmark::State& state) {
  const auto sys = rauzy_system();
  for (auto _ : state) benchmark::DoNotOptimize(attractor_points(sys, AttractorMethod::chaos, 100'000, 1));
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_ChaosGame)->Unit(benchmark::kMillisecond);

static void BM_Lyapunov(benchmark::State& state) {
  const auto sys = rauzy_system();
  for (auto _ : state) benchmark::DoNotOptimize(lyapunov_exponents(sys, 10'000, 1));
  state.SetItemsProcessed(state.iterations() * 10'000 * kLyapunovChains);
}
BENCHMARK(BM_Lyapunov)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
