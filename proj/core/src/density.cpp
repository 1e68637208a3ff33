#include "ideal/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ideal {

DensityTable compute_density(const ScalingTransform& t,
                             const std::vector<FeatureVector>& pool, int k_nn) {
  const int m = static_cast<int>(pool.size());
  if (k_nn < 1) throw std::invalid_argument("compute_density: k_nn must be >= 1");
  if (m <= k_nn) {
    throw std::invalid_argument("compute_density: pool size must exceed k_nn");
  }

  std::vector<FeatureVector> scaled(pool.size());
  for (int k = 0; k < m; ++k) scaled[k] = t.scale(pool[k]);

  // Mean distance to the k_nn nearest neighbours, brute force over the pool.
  std::vector<double> mean_dist(pool.size());
  std::vector<double> dist(pool.size() - 1);
  for (int k = 0; k < m; ++k) {
    int idx = 0;
    for (int j = 0; j < m; ++j) {
      if (j == k) continue;
      dist[idx++] = (scaled[k] - scaled[j]).norm();
    }
    std::nth_element(dist.begin(), dist.begin() + (k_nn - 1), dist.end());
    std::sort(dist.begin(), dist.begin() + k_nn);
    double acc = 0.0;
    for (int j = 0; j < k_nn; ++j) acc += dist[j];
    mean_dist[k] = acc / k_nn;
    if (mean_dist[k] <= 0.0) {
      throw std::invalid_argument(
          "compute_density: duplicate pool points give zero neighbour distance");
    }
  }

  const double d_min = *std::min_element(mean_dist.begin(), mean_dist.end());
  const int n = t.dim();

  DensityTable table;
  table.k_nn = k_nn;
  table.rho.resize(pool.size());
  // (d_min/d_k)^n in log space; the direct power over/underflows for
  // moderate n.
  const double log_min = std::log(d_min);
  for (int k = 0; k < m; ++k) {
    table.rho[k] = std::exp(static_cast<double>(n) * (log_min - std::log(mean_dist[k])));
  }
  return table;
}

}  // namespace ideal
