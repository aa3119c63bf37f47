#include <benchmark/benchmark.h>

#include "fbmsig/expected_signature.hpp"
#include "fbmsig/grid_approx.hpp"

using namespace fbmsig;

// Fresh calculator per iteration so the pairing cache does not hide the cost.
static void BM_ExpectedWord(benchmark::State& state) {
  const Word words[] = {Word{1, 2, 1, 2}, Word{1, 2, 3, 1, 2, 3}, Word{1, 1, 2, 2, 3, 3}};
  const Word& w = words[state.range(0)];
  for (auto _ : state) {
    ExpectedSignatureCalculator calc(0.75);
    benchmark::DoNotOptimize(calc.expected_word(w));
  }
  state.SetLabel(w.to_string());
}
BENCHMARK(BM_ExpectedWord)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_ExpectedTensorDepth4(benchmark::State& state) {
  FbmParams p;
  p.hurst = 0.7;
  p.dim = 2;
  for (auto _ : state) benchmark::DoNotOptimize(expected_tensor(p, 4));
}
BENCHMARK(BM_ExpectedTensorDepth4)->Unit(benchmark::kMillisecond);

static void BM_ApproxExpectedWord(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(approx_expected_word(Word{1, 2, 1, 2}, 0.75, m));
}
BENCHMARK(BM_ApproxExpectedWord)->RangeMultiplier(2)->Range(4, 64);
