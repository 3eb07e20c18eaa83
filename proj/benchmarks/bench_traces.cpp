#include "hauptmodul/identities.hpp"
#include "hauptmodul/traces.hpp"

#include <benchmark/benchmark.h>

using namespace hm;

/* The full per-discriminant computation behind trace(): class enumeration,
 * one certified CM evaluation per class, Faber polynomial, weighted sum.
 * Rebuilt inline because trace() itself memoizes and would only show its
 * cache after the first iteration. */
static void BM_trace_sum_cold(benchmark::State &state) {
  int64_t d = state.range(0);
  FaberPoly phi = faber(Level{3, true}, 2);
  for (auto _ : state) {
    auto classes = gamma0star_classes(d, 3);
    CBall acc(192);
    for (const auto &cl : classes) {
      CBall v = evaluate_faber(phi, eval_hauptmodul_star(Level{3, true}, cl.rep, 192));
      acc = add(acc, mul_q(v, mpq_class(1, cl.stabilizer_order)));
    }
    benchmark::DoNotOptimize(round_to_integer(acc.re));
  }
}
BENCHMARK(BM_trace_sum_cold)->Arg(23)->Arg(120)->Arg(407)->Arg(800)
    ->Unit(benchmark::kMicrosecond);

/* Memo-table hit path of trace(): measures lookup, not arithmetic. */
static void BM_trace_cached(benchmark::State &state) {
  int64_t d = state.range(0);
  trace(3, true, 2, d);
  for (auto _ : state)
    benchmark::DoNotOptimize(trace(3, true, 2, d));
}
BENCHMARK(BM_trace_cached)->Arg(23)->Arg(800);

static void BM_cm_eval(benchmark::State &state) {
  mpfr_prec_t bits = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_hauptmodul_star(Level{3, true}, QuadForm{3, 2, 4}, bits));
}
BENCHMARK(BM_cm_eval)->Arg(128)->Arg(512)->Arg(2048);

static void BM_class_enumeration(benchmark::State &state) {
  int64_t d = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(gamma0star_classes(d, 3));
}
BENCHMARK(BM_class_enumeration)->Arg(120)->Arg(800)->Arg(3203);

/* Coefficient assembly on a warm trace cache: the sum over r and the
 * exact divisions that remain once every trace is memoized. */
static void BM_coefficient_assembly(benchmark::State &state) {
  long n = state.range(0);
  coefficient_via_traces(3, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(coefficient_via_traces(3, n));
}
BENCHMARK(BM_coefficient_assembly)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
