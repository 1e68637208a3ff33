#include "ideal/init.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ideal {

std::vector<FeatureVector> lhs_sample(const Bounds& bounds, int count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("lhs_sample: count must be >= 1");
  const int n = bounds.dim();
  std::vector<FeatureVector> points(static_cast<std::size_t>(count),
                                    FeatureVector(n));
  std::vector<int> strata(static_cast<std::size_t>(count));
  for (int d = 0; d < n; ++d) {
    std::iota(strata.begin(), strata.end(), 0);
    for (int i = count - 1; i > 0; --i) {
      std::swap(strata[i], strata[rng.uniform_int(i + 1)]);
    }
    const double width = (bounds.x_max[d] - bounds.x_min[d]) / count;
    for (int i = 0; i < count; ++i) {
      points[i][d] = bounds.x_min[d] + (strata[i] + rng.uniform()) * width;
    }
  }
  return points;
}

InitResult lhs_init(const Bounds& bounds,
                    const std::function<bool(const FeatureVector&)>& known_constraint,
                    Oracle& oracle, int n_init, int n_max, Rng& rng) {
  if (n_init > n_max) throw std::invalid_argument("lhs_init: n_init > n_max");
  InitResult result;
  int feasible = 0;
  int dry_rounds = 0;
  while (feasible < n_init && result.n_init_total < n_max) {
    const auto design = lhs_sample(bounds, n_init, rng);
    bool progressed = false;
    for (const auto& x : design) {
      if (known_constraint && !known_constraint(x)) continue;
      if (result.n_init_total >= n_max) break;
      QueryResult r = oracle.query(x);
      ++result.n_init_total;
      progressed = true;
      if (r.feasible()) ++feasible;
      result.queried.push_back({x, std::move(r), -1});
      if (feasible == n_init) break;
    }
    // The known constraint may reject entire designs without spending budget;
    // give up rather than loop forever.
    if (!progressed && ++dry_rounds >= 1000) break;
    if (progressed) dry_rounds = 0;
  }
  result.success = feasible == n_init;
  return result;
}

namespace {

int nearest_centroid(const FeatureVector& p,
                     const std::vector<FeatureVector>& centroids) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = (p - centroids[c]).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

std::vector<FeatureVector> kmeans(const std::vector<FeatureVector>& points,
                                  int k, Rng& rng) {
  const int m = static_cast<int>(points.size());
  if (k < 1 || k > m) {
    throw std::invalid_argument("kmeans: k must be in [1, number of points]");
  }

  // k-means++ seeding: first centroid uniform, the rest sampled with
  // probability proportional to the squared distance to the nearest chosen
  // centroid.
  std::vector<FeatureVector> centroids;
  centroids.reserve(static_cast<std::size_t>(k));
  centroids.push_back(points[rng.uniform_int(m)]);
  std::vector<double> d2(points.size());
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centroids) {
        best = std::min(best, (points[i] - c).squaredNorm());
      }
      d2[i] = best;
      total += best;
    }
    int pick = -1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        acc += d2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) pick = m - 1;
    } else {
      // All remaining mass is zero (duplicate scaled points); take the first
      // index not yet chosen.
      for (int i = 0; i < m && pick < 0; ++i) {
        if (d2[i] > 0.0) pick = i;
      }
      if (pick < 0) pick = 0;
    }
    centroids.push_back(points[pick]);
  }

  std::vector<int> assignment(points.size(), -1);
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = false;
    for (int i = 0; i < m; ++i) {
      const int c = nearest_centroid(points[i], centroids);
      if (c != assignment[i]) {
        assignment[i] = c;
        changed = true;
      }
    }
    if (!changed) break;

    std::vector<FeatureVector> sums(static_cast<std::size_t>(k),
                                    FeatureVector::Zero(points[0].size()));
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < m; ++i) {
      sums[assignment[i]] += points[i];
      ++counts[assignment[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centroids[c] = sums[c] / counts[c];
      } else {
        // Reseed an empty cluster to the point farthest from its centroid.
        int far_idx = 0;
        double far_d = -1.0;
        for (int i = 0; i < m; ++i) {
          const double d = (points[i] - centroids[assignment[i]]).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far_idx = i;
          }
        }
        centroids[c] = points[far_idx];
      }
    }
  }
  return centroids;
}

InitResult pool_init(const std::vector<FeatureVector>& pool,
                     const ScalingTransform& transform, Oracle& oracle,
                     int n_init, int n_max, Rng& rng) {
  const int m = static_cast<int>(pool.size());
  if (n_init > m) throw std::invalid_argument("pool_init: n_init exceeds pool size");
  if (n_init > n_max) throw std::invalid_argument("pool_init: n_init > n_max");

  std::vector<FeatureVector> scaled(pool.size());
  for (int i = 0; i < m; ++i) scaled[i] = transform.scale(pool[i]);

  InitResult result;
  std::vector<std::uint8_t> consumed(pool.size(), 0);
  int consumed_count = 0;
  int feasible = 0;

  while (feasible < n_init && result.n_init_total < n_max && consumed_count < m) {
    const int shortfall = n_init - feasible;
    std::vector<int> available;
    available.reserve(pool.size());
    for (int i = 0; i < m; ++i) {
      if (!consumed[i]) available.push_back(i);
    }
    const int k = std::min<int>(shortfall, static_cast<int>(available.size()));

    std::vector<FeatureVector> candidates;
    candidates.reserve(available.size());
    for (int i : available) candidates.push_back(scaled[i]);
    const auto centroids = kmeans(candidates, k, rng);

    // One nearest unclaimed pool point per centroid, ties to lowest index.
    std::vector<std::uint8_t> claimed(available.size(), 0);
    std::vector<int> picks;
    picks.reserve(static_cast<std::size_t>(k));
    for (const auto& c : centroids) {
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < available.size(); ++j) {
        if (claimed[j]) continue;
        const double d = (candidates[j] - c).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(j);
        }
      }
      if (best < 0) break;
      claimed[best] = 1;
      picks.push_back(available[best]);
    }

    for (int idx : picks) {
      if (result.n_init_total >= n_max) break;
      QueryResult r = oracle.query(pool[idx]);
      ++result.n_init_total;
      consumed[idx] = 1;
      ++consumed_count;
      if (r.feasible()) ++feasible;
      result.queried.push_back({pool[idx], std::move(r), idx});
      if (feasible == n_init) break;
    }
  }
  result.success = feasible == n_init;
  return result;
}

}  // namespace ideal
