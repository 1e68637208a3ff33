#pragma once

#include <vector>

#include "ideal/types.hpp"

namespace ideal {

// Square root of the mean squared componentwise error.
double rmse(const std::vector<TargetVector>& truth,
            const std::vector<TargetVector>& pred);

// Fraction of samples whose predicted class matches the ground truth:
// argmax for one-hot targets, threshold 0.5 for a single binary output.
double accuracy(const std::vector<TargetVector>& truth,
                const std::vector<TargetVector>& pred);

// Median with the even-count convention of averaging the two middle values.
double median(std::vector<double> values);

}  // namespace ideal
