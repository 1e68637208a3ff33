#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ideal/rng.hpp"
#include "ideal/types.hpp"

using namespace ideal;

namespace {

FeatureVector vec(std::initializer_list<double> vals) {
  FeatureVector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

ProblemSpec pool_spec(std::vector<FeatureVector> pool) {
  return ProblemSpec::pool_problem(std::move(pool), 1, TargetKind::Regression);
}

}  // namespace

TEST_CASE("compute_bounds: componentwise min/max over the pool") {
  const auto spec = pool_spec({vec({0, 2}), vec({4, -1})});
  const Bounds b = compute_bounds(spec);
  CHECK(b.x_min == vec({0, -1}));
  CHECK(b.x_max == vec({4, 2}));
}

TEST_CASE("compute_bounds: single point is degenerate") {
  const auto spec = pool_spec({vec({1.5, -2})});
  const Bounds b = compute_bounds(spec);
  CHECK(b.x_min == b.x_max);
  CHECK(b.degenerate(0));
  CHECK(b.degenerate(1));
}

TEST_CASE("compute_bounds: 1000 equally spaced points on [-3,3]") {
  std::vector<FeatureVector> pool;
  for (int i = 0; i < 1000; ++i) {
    pool.push_back(vec({-3.0 + 6.0 * i / 999.0}));
  }
  const Bounds b = compute_bounds(pool_spec(std::move(pool)));
  CHECK(b.x_min[0] == doctest::Approx(-3.0));
  CHECK(b.x_max[0] == doctest::Approx(3.0));
}

TEST_CASE("compute_bounds: empty pool is an error") {
  CHECK_THROWS_WITH_AS(pool_spec({}), "empty pool", std::invalid_argument);
}

TEST_CASE("scale: midpoint maps to zero") {
  const ScalingTransform t({vec({0}), vec({2})});
  CHECK(t.scale(vec({1}))[0] == 0.0);
}

TEST_CASE("scale: x_min maps to -1 on every component") {
  const ScalingTransform t({vec({0, -5, 2}), vec({2, 3, 7})});
  const FeatureVector s = t.scale(vec({0, -5, 2}));
  for (int i = 0; i < 3; ++i) CHECK(s[i] == doctest::Approx(-1.0));
}

TEST_CASE("scale: direct evaluation of the affine map") {
  // diag(2/(3-(-3))) * (1.5 - 0) = 1.5/3 = 0.5
  const ScalingTransform t({vec({-3}), vec({3})});
  CHECK(t.scale(vec({1.5}))[0] == doctest::Approx(0.5));
}

TEST_CASE("scale: degenerate component maps to zero") {
  const ScalingTransform t({vec({2, 0}), vec({2, 1})});
  const FeatureVector s = t.scale(vec({7, 0.5}));
  CHECK(s[0] == 0.0);
  CHECK(s[1] == doctest::Approx(0.0));
}

TEST_CASE("scaled_sq_distance: zero at coincident points") {
  const ScalingTransform t({vec({0, 0}), vec({1, 2})});
  CHECK(t.scaled_sq_distance(vec({0.3, 1.1}), vec({0.3, 1.1})) == 0.0);
}

TEST_CASE("scaled_sq_distance: scaled endpoints of [0,2] are 2 apart") {
  const ScalingTransform t({vec({0}), vec({2})});
  CHECK(t.scaled_sq_distance(vec({0}), vec({2})) == doctest::Approx(4.0));
}

TEST_CASE("scaled_sq_distance: unit square corners") {
  const ScalingTransform t({vec({0, 0}), vec({1, 1})});
  CHECK(t.scaled_sq_distance(vec({0, 0}), vec({1, 1})) == doctest::Approx(8.0));
}

TEST_CASE("scaled_sq_distance: dimension mismatch is an error") {
  const ScalingTransform t({vec({0}), vec({2})});
  CHECK_THROWS_AS(t.scaled_sq_distance(vec({0, 1}), vec({1, 1})),
                  std::invalid_argument);
}

TEST_CASE("scale is affine along segments") {
  Rng rng(7);
  const ScalingTransform t({vec({-2, 0, 1}), vec({5, 4, 9})});
  for (int trial = 0; trial < 50; ++trial) {
    FeatureVector x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = rng.uniform(-10, 10);
      y[i] = rng.uniform(-10, 10);
    }
    const double alpha = rng.uniform(-1, 2);
    const FeatureVector lhs = t.scale(alpha * x + (1 - alpha) * y);
    const FeatureVector rhs = alpha * t.scale(x) + (1 - alpha) * t.scale(y);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("scaled_sq_distance is symmetric and nonnegative") {
  Rng rng(11);
  const ScalingTransform t({vec({-1, -1}), vec({1, 3})});
  for (int trial = 0; trial < 50; ++trial) {
    const FeatureVector a = vec({rng.uniform(-5, 5), rng.uniform(-5, 5)});
    const FeatureVector b = vec({rng.uniform(-5, 5), rng.uniform(-5, 5)});
    const double dab = t.scaled_sq_distance(a, b);
    CHECK(dab >= 0.0);
    CHECK(dab == t.scaled_sq_distance(b, a));
  }
}

TEST_CASE("scaled distances are invariant to per-feature affine rescaling") {
  Rng rng(13);
  std::vector<FeatureVector> pool;
  for (int i = 0; i < 40; ++i) {
    pool.push_back(vec({rng.uniform(-3, 3), rng.uniform(10, 30)}));
  }
  const ScalingTransform t(compute_bounds(pool_spec(pool)));

  // Positive affine map per feature: x -> a*x + b with a > 0.
  const double a0 = rng.uniform(0.1, 5.0), b0 = rng.uniform(-7, 7);
  const double a1 = rng.uniform(0.1, 5.0), b1 = rng.uniform(-7, 7);
  std::vector<FeatureVector> mapped;
  for (const auto& x : pool) {
    mapped.push_back(vec({a0 * x[0] + b0, a1 * x[1] + b1}));
  }
  const ScalingTransform tm(compute_bounds(pool_spec(mapped)));

  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const double d = t.scaled_sq_distance(pool[i], pool[j]);
      const double dm = tm.scaled_sq_distance(mapped[i], mapped[j]);
      CHECK(std::abs(d - dm) < 1e-9);
    }
  }
}

TEST_CASE("pool deduplication keeps first occurrences") {
  const auto spec = pool_spec({vec({1, 2}), vec({3, 4}), vec({1, 2})});
  CHECK(spec.pool.size() == 2);
  CHECK(spec.pool[0] == vec({1, 2}));
  CHECK(spec.pool[1] == vec({3, 4}));
}

TEST_CASE("LearnerState bookkeeping") {
  LearnerState state;
  state.init_pool_mask(4);
  TargetVector y(1);
  y[0] = 2.0;
  state.add_sample(vec({0}), QueryResult::labeled(y), 2);
  state.add_sample(vec({1}), QueryResult::infeasible(), 3);
  CHECK(state.query_count == 2);
  CHECK(state.feasible_count() == 1);
  CHECK(state.feasible_indices[0] == 0);
  CHECK(state.consumed_count == 2);
  CHECK(state.consumed[2] == 1);
  CHECK(state.consumed[3] == 1);
  CHECK_FALSE(state.pool_exhausted());
}
