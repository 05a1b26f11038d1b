#include <benchmark/benchmark.h>

#include <cmath>

#include "mhd/initial_data.hpp"
#include "mhd/spectral.hpp"

namespace {

mhd::ScalarField smooth_field(int n) {
  const mhd::Grid g(2.0 * std::numbers::pi, n);
  return mhd::sample(g, [](double x, double y, double z) { return std::sin(x) * std::cos(2 * y) + std::sin(3 * z); });
}

void BM_ForwardTransform(benchmark::State& state) {
  const auto f = smooth_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mhd::to_spectral(f));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.grid().points()));
}
BENCHMARK(BM_ForwardTransform)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_InverseTransform(benchmark::State& state) {
  const auto f = mhd::to_spectral(smooth_field(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(mhd::to_physical(f));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.grid().points()));
}
BENCHMARK(BM_InverseTransform)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_LerayProject(benchmark::State& state) {
  const mhd::Grid g(2.0 * std::numbers::pi, static_cast<int>(state.range(0)));
  const auto w = mhd::to_spectral(mhd::make_W(g));
  for (auto _ : state) benchmark::DoNotOptimize(mhd::leray_project(w));
}
BENCHMARK(BM_LerayProject)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
