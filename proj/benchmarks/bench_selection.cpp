#include <benchmark/benchmark.h>

#include "ideal/engine.hpp"
#include "ideal/rng.hpp"

namespace {

using namespace ideal;

class ConstPredictor : public Predictor {
 public:
  void fit(const std::vector<FeatureVector>&, const std::vector<TargetVector>&,
           Rng&) override {}
  TargetVector predict(const FeatureVector&) const override {
    TargetVector y(1);
    y[0] = 0.4;
    return y;
  }
  bool supports_warm_start() const override { return false; }
  bool fitted() const override { return true; }
};

// One enumeration step over an M-point pool with 30 queried samples.
void BM_PoolSelection(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng(9);
  std::vector<FeatureVector> pool;
  for (int i = 0; i < m; ++i) {
    FeatureVector x(2);
    x[0] = rng.uniform(-1, 1);
    x[1] = rng.uniform(-1, 1);
    pool.push_back(std::move(x));
  }
  const auto spec = ProblemSpec::pool_problem(pool, 1, TargetKind::Regression);
  const ScalingTransform t(compute_bounds(spec));
  LearnerState learner;
  learner.init_pool_mask(static_cast<int>(spec.pool.size()));
  for (int k = 0; k < 30; ++k) {
    TargetVector y(1);
    y[0] = rng.uniform(-1, 1);
    learner.add_sample(spec.pool[k * (m / 40 + 1) % m],
                       QueryResult::labeled(y), k * (m / 40 + 1) % m);
  }
  const ConstPredictor predictor;
  EngineConfig ecfg;
  AcquisitionConfig acfg;
  acfg.delta = 1.0;
  for (auto _ : state) {
    Rng sel(13);
    benchmark::DoNotOptimize(select_next_pool(ecfg, acfg, learner, predictor,
                                              spec.pool, t, std::nullopt, sel));
  }
}
BENCHMARK(BM_PoolSelection)->Arg(1000)->Arg(10000);

void BM_PsoMaximize(benchmark::State& state) {
  Bounds b;
  b.x_min = Eigen::Vector2d(-2, -2);
  b.x_max = Eigen::Vector2d(2, 2);
  const auto f = [](const FeatureVector& x) { return -x.squaredNorm(); };
  for (auto _ : state) {
    Rng rng(17);
    benchmark::DoNotOptimize(pso_maximize(f, b, PsoConfig{}, rng));
  }
}
BENCHMARK(BM_PsoMaximize);

}  // namespace
