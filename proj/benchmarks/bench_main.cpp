#include "sqlr/distributions.hpp"
#include "sqlr/ftest.hpp"
#include "sqlr/simulation.hpp"
#include "sqlr/sqlr_test.hpp"
#include "sqlr/training.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace sqlr;

void BM_LossAndGradient(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const Index width = static_cast<Index>(std::floor(std::sqrt(static_cast<double>(n))));
  const Dataset data = gen_data(SimModel{n, 6, 1.0, 7});
  const SieveNetwork net = random_network(6, width, 1000.0, 1000.0, 0.5, 11);
  LossEvaluator eval(data.x(), data.y());
  Gradient grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.loss_and_gradient(net, grad));
  }
  state.SetItemsProcessed(state.iterations() * n * width);
}
BENCHMARK(BM_LossAndGradient)->Arg(500)->Arg(1000)->Arg(2000)->Arg(5000);

void BM_Train(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const Dataset data = gen_data(SimModel{n, 6, 1.0, 3});
  const Index width = SieveShape{}.resolve_width(n);
  const SieveNetwork init = random_network(6, width, 1000.0, 1000.0, 0.5, 5);
  const TrainConfig cfg{200, 0.1, 0, 0.5, true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(train(data, cfg, init).loss);
  }
}
BENCHMARK(BM_Train)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ProjectL1(benchmark::State& state) {
  Rng rng(1);
  Vector v(state.range(0));
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-10.0, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_l1(v, 1.0));
  }
}
BENCHMARK(BM_ProjectL1)->Arg(8)->Arg(72);

void BM_Chisq1Sf(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x = x > 30.0 ? 0.0 : x + 0.37;
    benchmark::DoNotOptimize(chisq1_sf(x));
  }
}
BENCHMARK(BM_Chisq1Sf);

void BM_FSf(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x = x > 30.0 ? 0.0 : x + 0.37;
    benchmark::DoNotOptimize(f_sf(x, 1, 993));
  }
}
BENCHMARK(BM_FSf);

void BM_FTestFeature(benchmark::State& state) {
  const Dataset data = gen_data(SimModel{static_cast<Index>(state.range(0)), 6, 1.0, 9});
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_test_feature(data, 4));
  }
}
BENCHMARK(BM_FTestFeature)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
