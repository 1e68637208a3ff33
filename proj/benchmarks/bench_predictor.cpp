#include <benchmark/benchmark.h>

#include "ideal/predictor.hpp"
#include "ideal/rng.hpp"

namespace {

using namespace ideal;

void BM_MlpFit(benchmark::State& state) {
  const int n_samples = static_cast<int>(state.range(0));
  Rng data_rng(3);
  std::vector<FeatureVector> xs;
  std::vector<TargetVector> ys;
  for (int k = 0; k < n_samples; ++k) {
    FeatureVector x(1);
    x[0] = data_rng.uniform(-1, 1);
    TargetVector y(1);
    y[0] = std::sin(5 * x[0]);
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
  }
  MlpConfig cfg;
  cfg.hidden_layers = {5, 5};
  cfg.max_epochs = 500;
  for (auto _ : state) {
    Mlp model(cfg);
    Rng rng(11);
    model.fit(xs, ys, rng);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_MlpFit)->Arg(10)->Arg(30);

void BM_MlpPredict(benchmark::State& state) {
  MlpConfig cfg;
  cfg.hidden_layers = {10, 10};
  Mlp model(cfg);
  Rng rng(5);
  model.initialize(2, 1, rng);
  FeatureVector x(2);
  x << 0.2, -0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.predict(x));
  }
}
BENCHMARK(BM_MlpPredict);

}  // namespace
