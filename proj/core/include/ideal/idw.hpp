#pragma once

#include <vector>

#include "ideal/types.hpp"

namespace ideal {

// Two inverse-distance weightings over squared scaled distances: the plain
// 1/d^2 form and the faster-decaying e^{-d^2}/d^2 form.
enum class WeightKind { Basic, Exponential };

// Squared-distance threshold below which a query point is treated as
// coincident with a sample. The exact-equality branches of the coefficient
// and distance definitions are numerically fragile, so coincidence is decided
// on scaled d^2 instead.
inline constexpr double kCoincidenceEps = 1e-12;

// Weight for one sample at squared scaled distance d2 > 0. Callers branch on
// coincidence first; d2 <= 0 is a contract violation.
double idw_weight(WeightKind kind, double d2);

// Normalized coefficients v_k of x against `samples`. If x coincides with a
// sample (d2 <= eps), returns the indicator of the first such sample;
// otherwise w_k / sum_j w_j. Output sums to 1.
Eigen::VectorXd idw_coefficients(const ScalingTransform& t, WeightKind kind,
                                 double eps, const FeatureVector& x,
                                 const std::vector<FeatureVector>& samples);

// Per-target uncertainty at x: sum over feasible samples of
// v_k(x) * ([y_k]_i - [y_hat]_i)^2. The coefficients v normalize over every
// queried sample (feasible or not), so the value decays near queried
// infeasible points as well. Throws when no labeled samples exist.
Eigen::VectorXd idw_variance(const ScalingTransform& t, WeightKind kind,
                             double eps, const FeatureVector& x,
                             const LearnerState& state,
                             const TargetVector& predictor_output);

// Exploration term in [0,1]: 0 at any queried sample, approaching 1 far from
// all of them. The sum runs over every queried sample, feasible or not.
double idw_distance(const ScalingTransform& t, WeightKind kind, double eps,
                    const FeatureVector& x,
                    const std::vector<FeatureVector>& samples);

namespace detail {

// Kernels on precomputed squared scaled distances. The public operations and
// the engine's candidate scoring both go through these, so identical inputs
// always produce bit-identical values.

Eigen::VectorXd coefficients_from_d2(WeightKind kind, double eps,
                                     const Eigen::VectorXd& d2);

double distance_from_d2(WeightKind kind, double eps, const Eigen::VectorXd& d2);

}  // namespace detail

}  // namespace ideal
