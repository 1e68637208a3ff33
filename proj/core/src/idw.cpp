#include "ideal/idw.hpp"

#include <cmath>
#include <stdexcept>

namespace ideal {

double idw_weight(WeightKind kind, double d2) {
  if (d2 <= 0.0) throw std::invalid_argument("idw_weight: d2 must be positive");
  if (kind == WeightKind::Basic) return 1.0 / d2;
  return std::exp(-d2) / d2;
}

namespace detail {

Eigen::VectorXd coefficients_from_d2(WeightKind kind, double eps,
                                     const Eigen::VectorXd& d2) {
  const Eigen::Index n = d2.size();
  if (n == 0) throw std::invalid_argument("idw_coefficients: no samples");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (d2[k] <= eps) {
      v[k] = 1.0;
      return v;
    }
  }
  double total = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    v[k] = idw_weight(kind, d2[k]);
    total += v[k];
  }
  if (total <= 0.0) {
    // Exponential weights all underflowed; fall back to the basic form,
    // which cannot underflow for finite d2.
    total = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      v[k] = 1.0 / d2[k];
      total += v[k];
    }
  }
  v /= total;
  return v;
}

double distance_from_d2(WeightKind kind, double eps, const Eigen::VectorXd& d2) {
  if (d2.size() == 0) throw std::invalid_argument("idw_distance: no samples");
  double total = 0.0;
  for (Eigen::Index k = 0; k < d2.size(); ++k) {
    if (d2[k] <= eps) return 0.0;
    total += idw_weight(kind, d2[k]);
  }
  if (total <= 0.0) return 1.0;  // weights underflowed: the limit value
  return (2.0 / 3.141592653589793238462643383279502884) *
         std::atan(1.0 / total);
}

}  // namespace detail

Eigen::VectorXd idw_coefficients(const ScalingTransform& t, WeightKind kind,
                                 double eps, const FeatureVector& x,
                                 const std::vector<FeatureVector>& samples) {
  Eigen::VectorXd d2(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    d2[static_cast<Eigen::Index>(k)] = t.scaled_sq_distance(x, samples[k]);
  }
  return detail::coefficients_from_d2(kind, eps, d2);
}

Eigen::VectorXd idw_variance(const ScalingTransform& t, WeightKind kind,
                             double eps, const FeatureVector& x,
                             const LearnerState& state,
                             const TargetVector& predictor_output) {
  if (state.feasible_indices.empty()) {
    throw std::invalid_argument("idw_variance: no labeled samples");
  }
  // The coefficients normalize over every queried sample; only the feasible
  // ones contribute residual terms. Queried infeasible points therefore
  // absorb coefficient mass and suppress the variance around themselves,
  // which is what steers selection away from known-infeasible regions.
  const Eigen::Index n = static_cast<Eigen::Index>(state.samples.size());
  Eigen::VectorXd d2(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    d2[k] = t.scaled_sq_distance(x, state.samples[k].x);
  }
  const Eigen::VectorXd v = detail::coefficients_from_d2(kind, eps, d2);
  Eigen::VectorXd s2 = Eigen::VectorXd::Zero(predictor_output.size());
  for (int k : state.feasible_indices) {
    const TargetVector& y = *state.samples[k].result.target;
    if (y.size() != predictor_output.size()) {
      throw std::invalid_argument("idw_variance: target dimension mismatch");
    }
    for (Eigen::Index i = 0; i < s2.size(); ++i) {
      const double r = y[i] - predictor_output[i];
      s2[i] += v[k] * r * r;
    }
  }
  return s2;
}

double idw_distance(const ScalingTransform& t, WeightKind kind, double eps,
                    const FeatureVector& x,
                    const std::vector<FeatureVector>& samples) {
  Eigen::VectorXd d2(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    d2[static_cast<Eigen::Index>(k)] = t.scaled_sq_distance(x, samples[k]);
  }
  return detail::distance_from_d2(kind, eps, d2);
}

}  // namespace ideal
