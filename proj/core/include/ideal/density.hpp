#pragma once

#include <vector>

#include "ideal/types.hpp"

namespace ideal {

// Representativeness of each pool point, normalized so the densest point has
// value 1. Computed once per problem; the table is immutable afterwards.
struct DensityTable {
  std::vector<double> rho;  // in (0,1], at least one entry equal to 1
  int k_nn = 0;
};

// rho_k = (d_min / d_k)^n evaluated in log space, where d_k is the mean
// scaled distance from pool point k to its k_nn nearest neighbours and n is
// the feature dimension. Requires |pool| > k_nn and a deduplicated pool.
DensityTable compute_density(const ScalingTransform& t,
                             const std::vector<FeatureVector>& pool, int k_nn);

}  // namespace ideal
