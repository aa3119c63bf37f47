#include <benchmark/benchmark.h>

#include "fbmsig/cubature.hpp"
#include "fbmsig/sde.hpp"

using namespace fbmsig;

static void BM_VerifyCubature(benchmark::State& state) {
  const CubatureFormula f = lv_formula(0.6);
  for (auto _ : state) benchmark::DoNotOptimize(verify_cubature(f, 0.6, 5));
}
BENCHMARK(BM_VerifyCubature)->Unit(benchmark::kMillisecond);

static void BM_McWeakValue(benchmark::State& state) {
  VectorFieldSet vf;
  vf.fields = {[](const State& y) -> State { return State::Zero(y.size()); },
               [](const State& y) -> State { return 0.5 * y; }};
  const Observable f = [](const State& y) { return y(0); };
  const State x0 = State::Constant(1, 1.0);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_weak_value(vf, f, x0, 0.75, 1.0, 1000, steps, 7));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_McWeakValue)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
