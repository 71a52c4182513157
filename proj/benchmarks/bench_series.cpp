#include <benchmark/benchmark.h>

#include "cbsum/closed_form.hpp"
#include "cbsum/constants.hpp"
#include "cbsum/logsine.hpp"
#include "cbsum/series.hpp"

using namespace cbsum;

static void BM_EvaluateOrderTwo(benchmark::State& state) {
  const PrecisionContext ctx{static_cast<long>(state.range(0))};
  EvalOptions opts;
  opts.cutoff = 5000;
  for (auto _ : state) {
    EvalResult r = evaluate(SeriesFamily::s(2), ctx, opts);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_EvaluateOrderTwo)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_EvaluateOddHarmonicWeighted(benchmark::State& state) {
  const PrecisionContext ctx{30};
  EvalOptions opts;
  opts.cutoff = state.range(0);
  for (auto _ : state) {
    EvalResult r = evaluate(SeriesFamily::v(2), ctx, opts);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_EvaluateOddHarmonicWeighted)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_ExactPartialSum(benchmark::State& state) {
  const SeriesFamily f = SeriesFamily::s(2);
  for (auto _ : state) {
    Rational p = partial_sum(f, state.range(0));
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_ExactPartialSum)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_ParseCatalogForm(benchmark::State& state) {
  const char* text = "18*z7 - 79/8*ln2*z6 - 6*z2*z5 + 12*ln2^2*z5 - 9/2*z3*z4 - 3*ln2^3*z4 + "
                     "4*ln2*z3^2 - 4*ln2^2*z2*z3 + 4/3*ln2^4*z3 - 4/15*ln2^5*z2 + 8/315*ln2^7";
  for (auto _ : state) {
    ClosedForm f = cf_parse(text);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_ParseCatalogForm);

static void BM_LogSineMoment(benchmark::State& state) {
  QuadratureOptions opts;
  opts.ctx = PrecisionContext{static_cast<long>(state.range(0))};
  for (auto _ : state) {
    LogSineResult r = log_sin_moment(3, opts);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_LogSineMoment)->Arg(25)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_ZetaConstant(benchmark::State& state) {
  for (auto _ : state) {
    // fresh context each round so the cache does not short-circuit the work
    PrecisionContext ctx{30, static_cast<long>(5 + state.iterations() % 23)};
    Real z = const_zeta(3, ctx);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_ZetaConstant);

BENCHMARK_MAIN();
