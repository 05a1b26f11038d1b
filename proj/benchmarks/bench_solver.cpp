#include <benchmark/benchmark.h>

#include "mhd/initial_data.hpp"
#include "mhd/solver.hpp"

namespace {

void BM_NonlinearRhs(benchmark::State& state) {
  const mhd::Grid g(4.0 * std::numbers::pi, static_cast<int>(state.range(0)));
  mhd::InitialDataParams p;
  const auto s = mhd::make_state(mhd::build_u0(p, g), mhd::build_b0(p, g), mhd::MhdParams{});
  for (auto _ : state) benchmark::DoNotOptimize(mhd::nonlinear_rhs(s));
}
BENCHMARK(BM_NonlinearRhs)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
  const mhd::Grid g(4.0 * std::numbers::pi, static_cast<int>(state.range(0)));
  mhd::InitialDataParams p;
  mhd::MhdParams params;
  params.dt_policy = mhd::DtPolicy::fixed(1e-3);
  auto s = mhd::make_state(mhd::build_u0(p, g), mhd::build_b0(p, g), params);
  mhd::MhdIntegrator integrator(g, params);
  for (auto _ : state) integrator.advance(s, 1e-3);
}
BENCHMARK(BM_Step)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
