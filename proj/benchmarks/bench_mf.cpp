#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bench_common.hpp"
#include "skincare/mf.hpp"

namespace {

using namespace skincare;

void BM_ObjectiveAndGradient(benchmark::State& state) {
  const auto im = mf::build_interactions(bench::synthetic(static_cast<std::size_t>(state.range(0))));
  const std::size_t k = 8;
  std::vector<double> theta((im.r.rows() + im.r.cols()) * k);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0, 0.1);
  for (double& x : theta) x = g(rng);
  std::vector<double> grad(theta.size());
  for (auto _ : state) benchmark::DoNotOptimize(mf::objective(im.r, theta, k, 0.01, grad));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ObjectiveAndGradient)->Arg(50)->Arg(1263)->Arg(5000);

void BM_TrainSample(benchmark::State& state) {
  const auto im = mf::build_interactions(bench::sample());
  for (auto _ : state) benchmark::DoNotOptimize(mf::train(im, mf::MfConfig{}));
}
BENCHMARK(BM_TrainSample)->Unit(benchmark::kMillisecond);

}  // namespace
