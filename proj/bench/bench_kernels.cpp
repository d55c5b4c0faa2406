// Serial reference kernels against their OpenMP counterparts, and the
// truncation evaluator against materialized truncations.

#include "peckit/estimator.hpp"
#include "peckit/kernels.hpp"
#include "peckit/random_config.hpp"

#include <benchmark/benchmark.h>

using namespace peckit;

namespace {

FinitePair pair_of(std::size_t n) {
  Random rng(7 + n);
  return random_finite_pair(rng, n);
}

RootSystemType type_arg(const benchmark::State& state) { return static_cast<RootSystemType>(state.range(1)); }

void BM_MinEnergySerial(benchmark::State& state) {
  const FinitePair p = pair_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::min_energy_serial(p.lambda, p.chi, type_arg(state)));
}

void BM_MinEnergyParallel(benchmark::State& state) {
  const FinitePair p = pair_of(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::min_energy_parallel(p.lambda, p.chi, type_arg(state)));
}

void kernel_args(benchmark::internal::Benchmark* b) {
  for (int n : {5, 7, 8}) b->Args({n, static_cast<int>(RootSystemType::A)});
  for (int n : {4, 5, 6}) b->Args({n, static_cast<int>(RootSystemType::B)});
  for (int n : {5, 6, 7}) b->Args({n, static_cast<int>(RootSystemType::D)});
}

BENCHMARK(BM_MinEnergySerial)->Apply(kernel_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinEnergyParallel)->Apply(kernel_args)->Unit(benchmark::kMillisecond)->UseRealTime();

Configuration harmonic_b() {
  return Configuration(RootSystemType::B, {Block{1, {}, {Tail::harmonic(0, 1)}},
                                           Block{-2, {Rational(3)}, {Tail::geometric(1, 1, Rational(1, 2))}}});
}

std::vector<std::uint64_t> depth_range(std::uint64_t n) {
  std::vector<std::uint64_t> d(n);
  for (std::uint64_t k = 0; k < n; ++k) d[k] = k + 1;
  return d;
}

void BM_ProfileSerial(benchmark::State& state) {
  const auto depths = depth_range(static_cast<std::uint64_t>(state.range(0)));
  const TruncationEvaluator eval(harmonic_b(), depths.back());
  for (auto _ : state) benchmark::DoNotOptimize(eval.profile_serial(depths));
}

void BM_ProfileParallel(benchmark::State& state) {
  const auto depths = depth_range(static_cast<std::uint64_t>(state.range(0)));
  const TruncationEvaluator eval(harmonic_b(), depths.back());
  for (auto _ : state) benchmark::DoNotOptimize(eval.profile(depths));
}

void BM_TruncationReference(benchmark::State& state) {
  const auto depth = static_cast<std::uint64_t>(state.range(0));
  const Configuration c = harmonic_b();
  for (auto _ : state) benchmark::DoNotOptimize(truncated_infimum_reference(c, depth));
}

void BM_TruncationEvaluator(benchmark::State& state) {
  const auto depth = static_cast<std::uint64_t>(state.range(0));
  const Configuration c = harmonic_b();
  for (auto _ : state) benchmark::DoNotOptimize(TruncationEvaluator(c, depth).infimum(depth));
}

BENCHMARK(BM_ProfileSerial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileParallel)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TruncationReference)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TruncationEvaluator)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
