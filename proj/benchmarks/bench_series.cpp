#include "hauptmodul/hauptmodul.hpp"
#include "hauptmodul/qseries.hpp"

#include <benchmark/benchmark.h>

using namespace hm;

static void BM_eta_series(benchmark::State &state) {
  long N = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(eta_series(N));
  state.SetComplexityN(N);
}
BENCHMARK(BM_eta_series)->Range(256, 4096)->Complexity();

static void BM_sparse_eta_pass(benchmark::State &state) {
  long N = state.range(0);
  QSeries f(0, N);
  f.set_coeff(0, 1);
  auto unit = eta_sparse(1, N);
  for (auto _ : state) {
    QSeries g = div_sparse(f, unit);
    benchmark::DoNotOptimize(g);
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_sparse_eta_pass)->Range(256, 4096)->Complexity();

static void BM_series_mul(benchmark::State &state) {
  long N = state.range(0);
  QSeries f = hauptmodul_series(Level{3, false}, N);
  for (auto _ : state)
    benchmark::DoNotOptimize(f * f);
  state.SetComplexityN(N);
}
BENCHMARK(BM_series_mul)->Range(64, 512)->Complexity();

static void BM_hauptmodul_series(benchmark::State &state) {
  Level level{int(state.range(0)), state.range(1) != 0};
  for (auto _ : state)
    benchmark::DoNotOptimize(hauptmodul_series(level, 500));
}
BENCHMARK(BM_hauptmodul_series)
    ->Args({2, 0})->Args({2, 1})
    ->Args({3, 0})->Args({3, 1})
    ->Args({5, 0})->Args({5, 1})
    ->Args({1, 1});

static void BM_faber(benchmark::State &state) {
  Level level{3, true};
  int m = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(faber(level, m));
}
BENCHMARK(BM_faber)->Arg(2)->Arg(5)->Arg(10)->Arg(20);

BENCHMARK_MAIN();
