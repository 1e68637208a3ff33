#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "ideal/rng.hpp"
#include "ideal/types.hpp"

namespace ideal {

// Contract every predictor plugged into the engine satisfies. After at least
// one fit, predict must be defined for all finite x; classification
// predictors emit values in [0,1]^m.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual void fit(const std::vector<FeatureVector>& xs,
                   const std::vector<TargetVector>& ys, Rng& rng) = 0;
  virtual TargetVector predict(const FeatureVector& x) const = 0;
  virtual bool supports_warm_start() const = 0;
  virtual bool fitted() const = 0;
};

// Per-target standard scaling fitted on the currently labeled data.
// Regression only; classification targets pass through untouched.
class TargetScaler {
 public:
  void fit(const std::vector<TargetVector>& ys);
  TargetVector scale(const TargetVector& y) const;
  TargetVector unscale(const TargetVector& y) const;
  bool fitted() const { return mean_.size() > 0; }

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::VectorXd& stddev() const { return stddev_; }
  void restore(Eigen::VectorXd mean, Eigen::VectorXd stddev);

 private:
  Eigen::VectorXd mean_;
  Eigen::VectorXd stddev_;  // floored at 1e-8
};

struct MlpConfig {
  enum class Activation { Logistic, ReLU };
  enum class OutputLayer { Linear, Logistic };

  std::vector<int> hidden_layers{5, 5};
  Activation activation = Activation::Logistic;
  OutputLayer output = OutputLayer::Linear;  // Linear: regression, Logistic: classification
  double l2_penalty = 1e-2;                  // on weights; biases are free
  int max_epochs = 2000;
  double learning_rate = 0.05;
  double lr_decay = 0.0;  // step t uses learning_rate / (1 + lr_decay * t)
  double tol = 1e-7;      // early stop when no improvement beyond tol...
  int patience = 25;      // ...for this many consecutive epochs
  bool warm_start = false;
};

// Small fully-connected network trained by full-batch adaptive-moment
// gradient descent. Regression targets are standard-scaled internally before
// every fit; predictions are returned in the original units.
class Mlp : public Predictor {
 public:
  explicit Mlp(MlpConfig config);

  void fit(const std::vector<FeatureVector>& xs,
           const std::vector<TargetVector>& ys, Rng& rng) override;
  TargetVector predict(const FeatureVector& x) const override;
  bool supports_warm_start() const override { return true; }
  bool fitted() const override { return initialized_; }

  const MlpConfig& config() const { return config_; }

  // Fresh random weights (no training); shapes follow the config and dims.
  void initialize(int input_dim, int output_dim, Rng& rng);

  // Flat parameter vector: per layer, weights row-major then biases.
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& theta);
  void set_layer(int layer, Eigen::MatrixXd weights, Eigen::VectorXd biases);

  // Training objective on a raw sample set: data loss (mean squared error on
  // scaled targets, or per-output binary cross-entropy) plus the l2 penalty.
  double loss(const std::vector<FeatureVector>& xs,
              const std::vector<TargetVector>& ys) const;
  // Analytic gradient of loss() with respect to parameters(), same layout.
  Eigen::VectorXd loss_gradient(const std::vector<FeatureVector>& xs,
                                const std::vector<TargetVector>& ys) const;

  // Pre-update loss per epoch of the most recent fit.
  const std::vector<double>& loss_history() const { return loss_history_; }
  const TargetScaler& target_scaler() const { return scaler_; }

  // Checkpoint as a self-describing JSON document.
  std::string save_checkpoint() const;
  static Mlp load_checkpoint(const std::string& json_text);

 private:
  struct Batch {
    Eigen::MatrixXd inputs;   // N x n
    Eigen::MatrixXd targets;  // N x m, scaled for regression
  };
  Batch assemble(const std::vector<FeatureVector>& xs,
                 const std::vector<TargetVector>& ys, bool refit_scaler);
  Batch assemble_const(const std::vector<FeatureVector>& xs,
                       const std::vector<TargetVector>& ys) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& inputs) const;
  double batch_loss(const Batch& batch) const;
  double batch_loss_gradient(const Batch& batch,
                             std::vector<Eigen::MatrixXd>& grad_w,
                             std::vector<Eigen::VectorXd>& grad_b) const;

  MlpConfig config_;
  std::vector<Eigen::MatrixXd> weights_;  // out x in
  std::vector<Eigen::VectorXd> biases_;
  TargetScaler scaler_;
  std::vector<double> loss_history_;
  bool initialized_ = false;
};

std::unique_ptr<Predictor> make_mlp(const MlpConfig& config);

// Decorator feeding the inner predictor scaled features. The engine wraps
// every predictor this way, which makes the whole selection pipeline immune
// to per-feature units: distances, the acquisition, and the model all see
// sigma(x).
class ScaledInputPredictor : public Predictor {
 public:
  ScaledInputPredictor(ScalingTransform transform,
                       std::unique_ptr<Predictor> inner)
      : transform_(std::move(transform)), inner_(std::move(inner)) {}

  void fit(const std::vector<FeatureVector>& xs,
           const std::vector<TargetVector>& ys, Rng& rng) override {
    std::vector<FeatureVector> scaled;
    scaled.reserve(xs.size());
    for (const auto& x : xs) scaled.push_back(transform_.scale(x));
    inner_->fit(scaled, ys, rng);
  }

  TargetVector predict(const FeatureVector& x) const override {
    return inner_->predict(transform_.scale(x));
  }

  bool supports_warm_start() const override {
    return inner_->supports_warm_start();
  }
  bool fitted() const override { return inner_->fitted(); }

  const Predictor& inner() const { return *inner_; }

 private:
  ScalingTransform transform_;
  std::unique_ptr<Predictor> inner_;
};

}  // namespace ideal
