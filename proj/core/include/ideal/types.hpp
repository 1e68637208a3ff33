#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ideal {

// Points in feature space. One-hot encoded binary features occupy {0,1}
// coordinates; everything downstream treats them as plain reals.
using FeatureVector = Eigen::VectorXd;
using TargetVector = Eigen::VectorXd;

enum class TargetKind { Regression, Classification };

// Outcome of querying the underlying process at x: either a target vector or
// the declaration that x lies outside the queryable set.
struct QueryResult {
  std::optional<TargetVector> target;

  static QueryResult labeled(TargetVector y) { return {std::move(y)}; }
  static QueryResult infeasible() { return {std::nullopt}; }
  bool feasible() const { return target.has_value(); }
};

// Abstract process y(x). Implementations may be synthetic functions, labeled
// datasets, or an external child process.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual QueryResult query(const FeatureVector& x) = 0;
};

// Hyper-box in feature space.
struct Bounds {
  FeatureVector x_min;
  FeatureVector x_max;

  int dim() const { return static_cast<int>(x_min.size()); }
  bool contains(const FeatureVector& x, double tol = 0.0) const;
  // A component is degenerate when x_min == x_max there.
  bool degenerate(int i) const { return x_min[i] == x_max[i]; }
};

// Per-feature affine map onto [-1,1]^n: x_min -> -1, x_max -> +1. Degenerate
// components map to 0 and contribute nothing to distances.
class ScalingTransform {
 public:
  ScalingTransform() = default;
  explicit ScalingTransform(Bounds bounds);

  const Bounds& bounds() const { return bounds_; }
  int dim() const { return static_cast<int>(center_.size()); }

  FeatureVector scale(const FeatureVector& x) const;

  // ||scale(a) - scale(b)||_2^2, accumulated in fixed component order so that
  // every caller sees bit-identical values for identical inputs.
  double scaled_sq_distance(const FeatureVector& a,
                            const FeatureVector& b) const;

 private:
  Bounds bounds_;
  FeatureVector center_;
  FeatureVector inv_halfwidth_;  // 0 on degenerate components
};

// Problem definition: a finite candidate pool or a bounded continuous set,
// plus target dimensionality and kind.
struct ProblemSpec {
  enum class Mode { Pool, Population };

  Mode mode = Mode::Pool;
  std::vector<FeatureVector> pool;  // pool mode, deduplicated
  Bounds box;                       // population mode
  // Known constraint g(x) <= 0; returns true when x is admissible. Violations
  // are filtered before querying, so they never spend budget.
  std::function<bool(const FeatureVector&)> known_constraint;
  int feature_dim = 0;
  int target_dim = 0;
  TargetKind target_kind = TargetKind::Regression;

  // Removes exact duplicates (raw-coordinate equality), preserving first
  // occurrences.
  static ProblemSpec pool_problem(std::vector<FeatureVector> pool,
                                  int target_dim, TargetKind kind);
  static ProblemSpec population_problem(
      Bounds box, int target_dim, TargetKind kind,
      std::function<bool(const FeatureVector&)> known_constraint = nullptr);
};

// One oracle interaction. pool_index is set in pool mode.
struct Sample {
  FeatureVector x;
  QueryResult result;
  int pool_index = -1;
};

// Samples queried so far. Q holds indices with a feasible result; the
// consumed mask tracks pool indices already spent (pool mode only).
struct LearnerState {
  std::vector<Sample> samples;
  std::vector<int> feasible_indices;   // Q, ascending
  std::vector<std::uint8_t> consumed;  // E as a mask over pool indices
  int consumed_count = 0;
  int query_count = 0;

  void init_pool_mask(int pool_size) {
    consumed.assign(static_cast<std::size_t>(pool_size), 0);
    consumed_count = 0;
  }

  // Records one oracle call. Marks the pool index consumed when given.
  void add_sample(FeatureVector x, QueryResult result, int pool_index = -1);

  int feasible_count() const { return static_cast<int>(feasible_indices.size()); }
  bool pool_exhausted() const {
    return consumed_count == static_cast<int>(consumed.size());
  }
};

// Smallest hyper-box containing the queryable vectors: componentwise min/max
// over the pool, or the given box in population mode.
Bounds compute_bounds(const ProblemSpec& spec);

}  // namespace ideal
