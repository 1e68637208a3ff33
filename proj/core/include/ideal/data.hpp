#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ideal/rng.hpp"
#include "ideal/types.hpp"

namespace ideal {

// y(x) = x^4 sin^2(x^2 / 3) plus N(0, noise_std^2) measurement noise.
double quartic_sine(double x, double noise_std, Rng& rng);

// Indicator of the unit circle (boundary inclusive). With `constrained`,
// points with 3*x2 > sqrt(3)*|x1| are infeasible.
QueryResult circle_indicator(const FeatureVector& x, bool constrained);

class QuarticSineOracle : public Oracle {
 public:
  QuarticSineOracle(double noise_std, std::uint64_t seed)
      : noise_std_(noise_std), rng_(seed) {}
  QueryResult query(const FeatureVector& x) override;

 private:
  double noise_std_;
  Rng rng_;
};

class CircleOracle : public Oracle {
 public:
  explicit CircleOracle(bool constrained) : constrained_(constrained) {}
  QueryResult query(const FeatureVector& x) override { return circle_indicator(x, constrained_); }

 private:
  bool constrained_;
};

// Labeled pool: exact lookup by coordinates, never infeasible.
class DatasetOracle : public Oracle {
 public:
  DatasetOracle(std::vector<FeatureVector> pool, std::vector<TargetVector> labels);
  QueryResult query(const FeatureVector& x) override;

  const std::vector<FeatureVector>& pool() const { return pool_; }
  const std::vector<TargetVector>& labels() const { return labels_; }

 private:
  std::vector<FeatureVector> pool_;
  std::vector<TargetVector> labels_;
};

enum class ColumnRole { Numeric, Categorical, Target };

// Ingested CSV with declared column roles, one-hot expansion of categorical
// features, and first-appearance category dictionaries.
struct Dataset {
  struct ColumnInfo {
    std::string name;
    ColumnRole role = ColumnRole::Numeric;
    std::vector<std::string> categories;  // one-hot dictionary, first appearance
  };

  std::vector<FeatureVector> features;
  std::vector<TargetVector> targets;
  std::vector<ColumnInfo> columns;
  std::vector<std::string> feature_names;  // expanded, e.g. color=red
  std::vector<std::string> target_labels;  // classification label order
  int feature_dim = 0;
  int target_dim = 0;
  TargetKind target_kind = TargetKind::Regression;

  // Original categorical value of `column` for row `row` (decodes one-hot).
  std::string decode_categorical(int row, const std::string& column) const;
};

// Column roles for load_csv. Columns not named default to numeric features.
struct DatasetSchema {
  std::vector<std::string> target_columns;
  std::vector<std::string> categorical_columns;
  TargetKind task = TargetKind::Regression;

  static DatasetSchema from_json_text(const std::string& text);
  static DatasetSchema from_json_file(const std::string& path);
};

// RFC-4180-style CSV with a required header row and '.' decimal separator.
// Binary classification targets become a single 0/1 output; three or more
// classes are one-hot encoded per class.
Dataset load_csv(const std::string& path, const DatasetSchema& schema);

// Errors in the child-process wire protocol (timeouts, malformed responses,
// unexpected exits). Carries the raw payload when one exists.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// Oracle backed by a child process speaking line-delimited JSON on
// stdin/stdout: request {"x":[...]}, response {"y":[...]} or
// {"infeasible":true}. One request in flight at a time.
class ExternalOracle : public Oracle {
 public:
  explicit ExternalOracle(const std::string& command, int timeout_ms = 30000);
  ~ExternalOracle() override;

  ExternalOracle(const ExternalOracle&) = delete;
  ExternalOracle& operator=(const ExternalOracle&) = delete;

  QueryResult query(const FeatureVector& x) override;

 private:
  std::string read_line();

  int child_pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  int timeout_ms_;
  std::string buffer_;
};

}  // namespace ideal
