#include <benchmark/benchmark.h>

#include <vector>

#include "bench_common.hpp"
#include "skincare/tsne.hpp"
#include "skincare/vectors.hpp"

namespace {

using namespace skincare;

void BM_Affinities(benchmark::State& state) {
  const auto m = vectorize(bench::synthetic(static_cast<std::size_t>(state.range(0))));
  const DenseMatrix d = tsne::pairwise_sq_distances(m);
  for (auto _ : state) benchmark::DoNotOptimize(tsne::calibrate_affinities(d, 30.0));
}
BENCHMARK(BM_Affinities)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

/// One exact gradient evaluation: the per-iteration cost of fit().
void BM_KlGradient(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = vectorize(bench::synthetic(n));
  const auto a = tsne::calibrate_affinities(tsne::pairwise_sq_distances(m), 30.0);
  const DenseMatrix y = tsne::initial_embedding(n, 42);
  std::vector<double> grad(2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(tsne::kl_gradient(a.p, y, 1.0, grad));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KlGradient)->Arg(50)->Arg(300)->Arg(1263)->Unit(benchmark::kMicrosecond)->Complexity();

void BM_FitSample(benchmark::State& state) {
  const auto m = vectorize(bench::sample());
  tsne::TsneConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(tsne::fit(m, cfg));
}
BENCHMARK(BM_FitSample)->Unit(benchmark::kMillisecond);

}  // namespace
