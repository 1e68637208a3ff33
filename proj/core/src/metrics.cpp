#include "ideal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ideal {

double rmse(const std::vector<TargetVector>& truth,
            const std::vector<TargetVector>& pred) {
  if (truth.empty() || truth.size() != pred.size()) {
    throw std::invalid_argument("rmse: empty or mismatched inputs");
  }
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    if (truth[k].size() != pred[k].size()) {
      throw std::invalid_argument("rmse: target dimension mismatch");
    }
    acc += (truth[k] - pred[k]).squaredNorm();
    count += static_cast<std::size_t>(truth[k].size());
  }
  return std::sqrt(acc / static_cast<double>(count));
}

namespace {

int predicted_class(const TargetVector& v) {
  if (v.size() == 1) return v[0] >= 0.5 ? 1 : 0;
  Eigen::Index best = 0;
  v.maxCoeff(&best);
  return static_cast<int>(best);
}

}  // namespace

double accuracy(const std::vector<TargetVector>& truth,
                const std::vector<TargetVector>& pred) {
  if (truth.empty() || truth.size() != pred.size()) {
    throw std::invalid_argument("accuracy: empty or mismatched inputs");
  }
  int correct = 0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    if (predicted_class(truth[k]) == predicted_class(pred[k])) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace ideal
