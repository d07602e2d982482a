#include <benchmark/benchmark.h>

#include "val/geometry.hpp"
#include "val/kernel.hpp"
#include "val/represent.hpp"
#include "val/rng.hpp"
#include "val/sparsify.hpp"

namespace {

val::Matrix cloud(int n, int m, std::uint64_t seed) {
  val::Rng rng(seed);
  val::Matrix X(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) X(i, j) = rng.normal();
  return X;
}

void BM_kernel_matrix(benchmark::State& state) {
  const val::Matrix X = cloud(static_cast<int>(state.range(0)), 8, 1);
  const val::KernelSpec spec = val::make_rbf(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(val::kernel_matrix(X, spec));
  }
}
BENCHMARK(BM_kernel_matrix)->Arg(128)->Arg(512)->Arg(1024);

void BM_sparsify_halve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const val::Matrix X = cloud(n, 8, 2);
  const val::KernelSpec spec = val::make_rbf(0.5);
  val::SparsifyParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(val::sparsify_halve(X, spec, params));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_sparsify_halve)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Complexity();

void BM_em_representation(benchmark::State& state) {
  const val::Matrix X = cloud(static_cast<int>(state.range(0)), 8, 3);
  val::EmParams params;
  params.seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(val::em_representation(X, 10, params));
  }
}
BENCHMARK(BM_em_representation)->Arg(256)->Arg(1024);

void BM_meb_2d(benchmark::State& state) {
  const val::Matrix X = cloud(static_cast<int>(state.range(0)), 2, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(val::meb(X));
  }
}
BENCHMARK(BM_meb_2d)->Arg(100)->Arg(1000)->Arg(10000);

void BM_meb_16d(benchmark::State& state) {
  const val::Matrix X = cloud(static_cast<int>(state.range(0)), 16, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(val::meb(X));
  }
}
BENCHMARK(BM_meb_16d)->Arg(100)->Arg(1000);

void BM_mmd_squared(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const val::Matrix X = cloud(n, 4, 6);
  const val::Matrix Y = cloud(n, 4, 7);
  const val::KernelSpec spec = val::make_rbf(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(val::mmd_squared(X, Y, spec));
  }
}
BENCHMARK(BM_mmd_squared)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
