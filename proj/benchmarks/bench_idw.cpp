#include <benchmark/benchmark.h>

#include "ideal/idw.hpp"
#include "ideal/rng.hpp"

namespace {

using namespace ideal;

struct Fixture {
  ScalingTransform transform;
  std::vector<FeatureVector> samples;
  FeatureVector query;

  explicit Fixture(int n_samples, int dim) {
    FeatureVector lo = FeatureVector::Constant(dim, -1.0);
    FeatureVector hi = FeatureVector::Constant(dim, 1.0);
    transform = ScalingTransform({lo, hi});
    Rng rng(7);
    for (int k = 0; k < n_samples; ++k) {
      FeatureVector x(dim);
      for (int d = 0; d < dim; ++d) x[d] = rng.uniform(-1, 1);
      samples.push_back(std::move(x));
    }
    query = FeatureVector::Zero(dim);
    query[0] = 0.323;
  }
};

void BM_IdwCoefficients(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(idw_coefficients(fx.transform,
                                              WeightKind::Exponential,
                                              kCoincidenceEps, fx.query,
                                              fx.samples));
  }
}
BENCHMARK(BM_IdwCoefficients)->Arg(16)->Arg(64)->Arg(256);

void BM_IdwDistance(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(idw_distance(fx.transform, WeightKind::Exponential,
                                          kCoincidenceEps, fx.query, fx.samples));
  }
}
BENCHMARK(BM_IdwDistance)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
