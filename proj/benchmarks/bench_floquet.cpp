#include <benchmark/benchmark.h>

#include "hillband/floquet.hpp"
#include "hillband/identities.hpp"

namespace {

using hillband::cplx;

void BM_FloquetSolve(benchmark::State& state) {
  const hillband::DiscriminantModel m(static_cast<int>(state.range(0)), {0.0, 2.0});
  const hillband::Quasimomentum q(1.1);
  for (auto _ : state) benchmark::DoNotOptimize(hillband::floquet_eigenvalues(m, q));
}
BENCHMARK(BM_FloquetSolve)->RangeMultiplier(2)->Range(2, 128)->Unit(benchmark::kMicrosecond);

void BM_TraceArcs(benchmark::State& state) {
  const hillband::DiscriminantModel m(5, {0.0, 0.5});
  const auto grid = hillband::uniform_kappa_grid(257);
  hillband::ArcOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hillband::trace_arcs(m, grid, opts));
}
BENCHMARK(BM_TraceArcs)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_RealBands(benchmark::State& state) {
  const hillband::DiscriminantModel m(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(hillband::real_bands(m));
}
BENCHMARK(BM_RealBands)->RangeMultiplier(2)->Range(2, 64)->Unit(benchmark::kMicrosecond);

void BM_ParsevalNorm(benchmark::State& state) {
  const hillband::DiscriminantModel m(static_cast<int>(state.range(0)), {0.5, -0.3});
  for (auto _ : state) benchmark::DoNotOptimize(hillband::parseval_norm(m));
}
BENCHMARK(BM_ParsevalNorm)->RangeMultiplier(4)->Range(4, 256);

}  // namespace
