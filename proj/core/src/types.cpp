#include "ideal/types.hpp"

#include <cmath>
#include <stdexcept>

namespace ideal {

bool Bounds::contains(const FeatureVector& x, double tol) const {
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < x_min[i] - tol || x[i] > x_max[i] + tol) return false;
  }
  return true;
}

ScalingTransform::ScalingTransform(Bounds bounds) : bounds_(std::move(bounds)) {
  const int n = bounds_.dim();
  if (static_cast<int>(bounds_.x_max.size()) != n) {
    throw std::invalid_argument("bounds dimension mismatch");
  }
  center_.resize(n);
  inv_halfwidth_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (bounds_.x_min[i] > bounds_.x_max[i]) {
      throw std::invalid_argument("bounds: x_min > x_max on component " +
                                  std::to_string(i));
    }
    center_[i] = 0.5 * (bounds_.x_min[i] + bounds_.x_max[i]);
    const double width = bounds_.x_max[i] - bounds_.x_min[i];
    inv_halfwidth_[i] = width > 0.0 ? 2.0 / width : 0.0;
  }
}

FeatureVector ScalingTransform::scale(const FeatureVector& x) const {
  if (x.size() != center_.size()) {
    throw std::invalid_argument("scale: dimension mismatch");
  }
  FeatureVector out(x.size());
  for (int i = 0; i < x.size(); ++i) {
    out[i] = (x[i] - center_[i]) * inv_halfwidth_[i];
  }
  return out;
}

double ScalingTransform::scaled_sq_distance(const FeatureVector& a,
                                            const FeatureVector& b) const {
  if (a.size() != center_.size() || b.size() != center_.size()) {
    throw std::invalid_argument("scaled_sq_distance: dimension mismatch");
  }
  double acc = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double d = (a[i] - b[i]) * inv_halfwidth_[i];
    acc += d * d;
  }
  return acc;
}

ProblemSpec ProblemSpec::pool_problem(std::vector<FeatureVector> pool,
                                      int target_dim, TargetKind kind) {
  if (pool.empty()) throw std::invalid_argument("empty pool");
  std::vector<FeatureVector> unique;
  unique.reserve(pool.size());
  for (const auto& x : pool) {
    bool dup = false;
    for (const auto& u : unique) {
      if (u.size() == x.size() && u == x) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(x);
  }
  ProblemSpec spec;
  spec.mode = Mode::Pool;
  spec.feature_dim = static_cast<int>(unique.front().size());
  spec.pool = std::move(unique);
  spec.target_dim = target_dim;
  spec.target_kind = kind;
  return spec;
}

ProblemSpec ProblemSpec::population_problem(
    Bounds box, int target_dim, TargetKind kind,
    std::function<bool(const FeatureVector&)> known_constraint) {
  for (int i = 0; i < box.dim(); ++i) {
    if (!std::isfinite(box.x_min[i]) || !std::isfinite(box.x_max[i])) {
      throw std::invalid_argument("population bounds must be finite");
    }
  }
  ProblemSpec spec;
  spec.mode = Mode::Population;
  spec.feature_dim = box.dim();
  spec.box = std::move(box);
  spec.known_constraint = std::move(known_constraint);
  spec.target_dim = target_dim;
  spec.target_kind = kind;
  return spec;
}

void LearnerState::add_sample(FeatureVector x, QueryResult result,
                              int pool_index) {
  const int idx = static_cast<int>(samples.size());
  if (result.feasible()) feasible_indices.push_back(idx);
  samples.push_back({std::move(x), std::move(result), pool_index});
  ++query_count;
  if (pool_index >= 0) {
    if (pool_index >= static_cast<int>(consumed.size())) {
      throw std::invalid_argument("pool index out of range");
    }
    if (!consumed[pool_index]) {
      consumed[pool_index] = 1;
      ++consumed_count;
    }
  }
}

Bounds compute_bounds(const ProblemSpec& spec) {
  if (spec.mode == ProblemSpec::Mode::Population) return spec.box;
  if (spec.pool.empty()) throw std::invalid_argument("empty pool");
  const int n = static_cast<int>(spec.pool.front().size());
  Bounds b;
  b.x_min = spec.pool.front();
  b.x_max = spec.pool.front();
  for (const auto& x : spec.pool) {
    if (x.size() != n) throw std::invalid_argument("pool dimension mismatch");
    for (int i = 0; i < n; ++i) {
      b.x_min[i] = std::min(b.x_min[i], x[i]);
      b.x_max[i] = std::max(b.x_max[i], x[i]);
    }
  }
  return b;
}

}  // namespace ideal
