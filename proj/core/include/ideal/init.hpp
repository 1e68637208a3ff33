#pragma once

#include <functional>
#include <vector>

#include "ideal/rng.hpp"
#include "ideal/types.hpp"

namespace ideal {

// Outcome of the initialization phase. success implies the number of labeled
// entries equals the requested count; n_init_total counts every oracle call
// spent, feasible or not.
struct InitResult {
  std::vector<Sample> queried;
  int n_init_total = 0;
  bool success = false;
};

// Latin hypercube design: per dimension, `count` samples occupy distinct
// equal-width strata with uniform jitter inside each stratum and an
// independently shuffled stratum assignment.
std::vector<FeatureVector> lhs_sample(const Bounds& bounds, int count, Rng& rng);

// Population-mode initialization: repeatedly draws full LHS designs, skips
// points violating the known constraint (no budget spent), queries the rest,
// and accumulates feasible pairs until n_init collected or n_max oracle calls
// spent.
InitResult lhs_init(const Bounds& bounds,
                    const std::function<bool(const FeatureVector&)>& known_constraint,
                    Oracle& oracle, int n_init, int n_max, Rng& rng);

// Lloyd iterations from k-means++ seeding until the assignment fixpoint or
// 300 iterations; empty clusters are reseeded to the farthest point. Distance
// ties break to the lowest index.
std::vector<FeatureVector> kmeans(const std::vector<FeatureVector>& points,
                                  int k, Rng& rng);

// Pool-mode initialization: K-means over the scaled pool with K equal to the
// shortfall, one nearest unconsumed pool point per centroid, repeated until
// n_init feasible pairs or the budget/pool is exhausted. Sample.pool_index
// records each consumed index.
InitResult pool_init(const std::vector<FeatureVector>& pool,
                     const ScalingTransform& transform, Oracle& oracle,
                     int n_init, int n_max, Rng& rng);

}  // namespace ideal
