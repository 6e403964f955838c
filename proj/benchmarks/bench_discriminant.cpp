#include <benchmark/benchmark.h>

#include "hillband/discriminant.hpp"
#include "hillband/transfer.hpp"

namespace {

using hillband::cplx;

const cplx kE{0.7, 0.3};
const cplx kV{1.0, -2.0};

void BM_ChebyshevEval(benchmark::State& state) {
  const hillband::DiscriminantModel m(static_cast<int>(state.range(0)), kV);
  for (auto _ : state) benchmark::DoNotOptimize(m.eval(kE));
}
BENCHMARK(BM_ChebyshevEval)->RangeMultiplier(4)->Range(4, 4096);

void BM_TransferTrace(benchmark::State& state) {
  const auto p = hillband::Potential::sparse(static_cast<int>(state.range(0)), kV);
  for (auto _ : state) benchmark::DoNotOptimize(hillband::discriminant_via_transfer(p, kE));
}
BENCHMARK(BM_TransferTrace)->RangeMultiplier(4)->Range(4, 4096);

void BM_TransferFastFreePower(benchmark::State& state) {
  const auto p = hillband::Potential::sparse(static_cast<int>(state.range(0)), kV);
  for (auto _ : state) benchmark::DoNotOptimize(hillband::monodromy(p, kE, {.fast_free_power = true}).trace());
}
BENCHMARK(BM_TransferFastFreePower)->RangeMultiplier(4)->Range(4, 4096);

void BM_DerivativeEval(benchmark::State& state) {
  const hillband::DiscriminantModel m(static_cast<int>(state.range(0)), kV);
  for (auto _ : state) benchmark::DoNotOptimize(m.eval_derivative(kE));
}
BENCHMARK(BM_DerivativeEval)->RangeMultiplier(4)->Range(4, 4096);

}  // namespace
