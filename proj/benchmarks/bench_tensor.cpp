#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fbmsig/tensor_algebra.hpp"

using namespace fbmsig;

namespace {

PiecewiseLinearPath random_path(int segments, int d) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> times;
  std::vector<std::vector<double>> points;
  std::vector<double> x(d, 0.0);
  for (int i = 0; i <= segments; ++i) {
    times.push_back(static_cast<double>(i) / segments);
    points.push_back(x);
    for (double& v : x) v += g(rng) / segments;
  }
  return PiecewiseLinearPath::from_spatial(times, points);
}

}  // namespace

static void BM_ChenConcat(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const std::vector<double> inc{0.1, 0.3, -0.2};
  const TruncatedTensor a = segment_exponential(inc, depth);
  for (auto _ : state) benchmark::DoNotOptimize(chen_concat(a, a));
}
BENCHMARK(BM_ChenConcat)->DenseRange(2, 8, 2);

static void BM_PathSignature(benchmark::State& state) {
  const PiecewiseLinearPath p = random_path(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(path_signature(p, 4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PathSignature)->RangeMultiplier(4)->Range(16, 1024);
