#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "skincare/vectors.hpp"

namespace {

void BM_Vectorize(benchmark::State& state) {
  const auto catalog = bench::synthetic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(skincare::vectorize(catalog));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Vectorize)->Arg(50)->Arg(1263);

void BM_Cosine(benchmark::State& state) {
  const auto m = skincare::vectorize(bench::sample());
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(skincare::row_cosine(m, i % m.rows(), (i * 7 + 3) % m.rows()));
    ++i;
  }
}
BENCHMARK(BM_Cosine);

void BM_Nearest(benchmark::State& state) {
  const auto catalog = bench::synthetic(static_cast<std::size_t>(state.range(0)));
  const auto m = skincare::vectorize(catalog);
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(skincare::nearest(m, q++ % m.rows(), 5));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Nearest)->Arg(50)->Arg(1263)->Arg(5000);

}  // namespace
