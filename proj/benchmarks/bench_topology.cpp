#include <benchmark/benchmark.h>

#include "mhd/initial_data.hpp"
#include "mhd/topology.hpp"

namespace {

void BM_InterpolantEval(benchmark::State& state) {
  const mhd::Grid g(2.0 * std::numbers::pi, 32);
  const mhd::FieldInterpolant f(mhd::make_W(g), static_cast<int>(state.range(0)));
  mhd::Vec3 x{0.123, -0.456, 0.789};
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.eval(x));
    x[0] += 1e-3;
  }
}
BENCHMARK(BM_InterpolantEval)->Arg(4)->Arg(6);

void BM_FindNullsWholeBox(benchmark::State& state) {
  const mhd::Grid g(2.0 * std::numbers::pi, static_cast<int>(state.range(0)));
  const mhd::FieldInterpolant f(mhd::make_W(g));
  for (auto _ : state) benchmark::DoNotOptimize(mhd::find_nulls(f, mhd::CensusRegion::whole_box()));
}
BENCHMARK(BM_FindNullsWholeBox)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
