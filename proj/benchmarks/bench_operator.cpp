#include <benchmark/benchmark.h>

#include <random>

#include "dhlab/operator.hpp"

using namespace dhlab;

namespace {

WeightedHankelMatrix::Vector random_vector(int n) {
  std::mt19937_64 rng(0);
  std::normal_distribution<double> g;
  WeightedHankelMatrix::Vector v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

WeightedHankelMatrix beta2_matrix(int n) {
  return WeightedHankelMatrix::build(moments(RadialMeasure::beta_density(2.0), 2 * n - 1), n,
                                     WeightScheme::derivative);
}

void BM_ApplyFast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = beta2_matrix(n);
  auto x = random_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(a.apply(x));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ApplyFast)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oNLogN);

void BM_ApplyNaive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = beta2_matrix(n);
  auto x = random_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(a.apply_naive(x));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ApplyNaive)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNSquared);

void BM_SpectralNorm(benchmark::State& state) {
  auto a = beta2_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(a).value);
}
BENCHMARK(BM_SpectralNorm)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_MomentsClosedForm(benchmark::State& state) {
  auto m = RadialMeasure::beta_density(2.5);
  for (auto _ : state) benchmark::DoNotOptimize(moments(m, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MomentsClosedForm)->Arg(256)->Arg(8192);

void BM_MomentsQuadrature(benchmark::State& state) {
  auto m = RadialMeasure::beta_density(2.0, 1.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(moments(m, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MomentsQuadrature)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
