#include <benchmark/benchmark.h>

#include "dglab/dynamics.hpp"
#include "dglab/heun.hpp"
#include "dglab/linear_ops.hpp"
#include "dglab/spectral.hpp"
#include "dglab/weighted_norm.hpp"

using namespace dglab;

namespace {

RealCircleField smooth_field(int N) {
  RealCircleField f(N);
  for (int k = 1; k <= N; ++k) f.set(k, cplx(1.0 / (k * k), -0.5 / (k * k * k)));
  return f;
}

}  // namespace

static void BM_HilbertRoundTrip(benchmark::State& state) {
  const RealCircleField f = smooth_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert(f));
}
BENCHMARK(BM_HilbertRoundTrip)->RangeMultiplier(4)->Range(64, 4096);

static void BM_GridTransform(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const RealCircleField f = smooth_field(N);
  const int M = product_grid_size(N);
  for (auto _ : state) benchmark::DoNotOptimize(from_grid(to_grid(f, M), N));
}
BENCHMARK(BM_GridTransform)->RangeMultiplier(4)->Range(64, 4096);

static void BM_DeGregorioRhs(benchmark::State& state) {
  const RealCircleField w = smooth_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rhs(DeGregorio{}, w));
}
BENCHMARK(BM_DeGregorioRhs)->RangeMultiplier(2)->Range(64, 1024);

static void BM_Y0Norm(benchmark::State& state) {
  const RealCircleField f = project_P0(smooth_field(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(y0_norm(f, 1.75));
}
BENCHMARK(BM_Y0Norm)->RangeMultiplier(4)->Range(16, 1024);

static void BM_Tridiagonal(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const auto L = TridiagonalCoeffs::make(OperatorTag::L, K);
  const ModeVector m = ModeVector::from_field(smooth_field(K), K);
  for (auto _ : state) benchmark::DoNotOptimize(apply_tridiagonal(L, m));
}
BENCHMARK(BM_Tridiagonal)->RangeMultiplier(4)->Range(64, 16384);

static void BM_EigenRecursion(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigen_recursion(cplx(0, 1), K));
}
BENCHMARK(BM_EigenRecursion)->RangeMultiplier(8)->Range(512, 131072);

BENCHMARK_MAIN();
