#include <benchmark/benchmark.h>

#include "etiquette/dist/gev.hpp"
#include "etiquette/dist/gmm.hpp"
#include "etiquette/dist/lognormal.hpp"

using namespace etiquette::dist;

namespace {

const GevParams kAccelLimit{0.3711, 0.1628, 0.5314};

void BM_GevPdf(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gev_pdf(kAccelLimit, x));
    x += 1e-6;
  }
}
BENCHMARK(BM_GevPdf);

void BM_GevQuantile(benchmark::State& state) {
  double p = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gev_quantile(kAccelLimit, p));
    p = p < 0.9 ? p + 1e-6 : 0.1;
  }
}
BENCHMARK(BM_GevQuantile);

void BM_GevFit(benchmark::State& state) {
  const auto samples = gev_sample(kAccelLimit, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gev_fit(samples));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GevFit)->Arg(1000)->Arg(10000);

void BM_GmmFitEm(benchmark::State& state) {
  GmmParams truth;
  truth.weights = {0.25, 0.35, 0.40};
  truth.means = {3.0, 12.0, 29.0};
  truth.variances = {1.0, 1.0, 1.0};
  const auto samples = gmm_sample(truth, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gmm_fit_em(samples));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GmmFitEm)->Arg(3000)->Arg(30000);

void BM_LognormalFit(benchmark::State& state) {
  const auto truth = lognormal_from_arith_moments(1.42, 0.08);
  const auto samples = lognormal_sample(truth, 10000, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lognormal_fit(samples));
  }
}
BENCHMARK(BM_LognormalFit);

}  // namespace

BENCHMARK_MAIN();
