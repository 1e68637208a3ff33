#include "ideal/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace ideal {

namespace {

constexpr double kStdFloor = 1e-8;

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

Eigen::MatrixXd apply_activation(const Eigen::MatrixXd& z,
                                 MlpConfig::Activation act) {
  if (act == MlpConfig::Activation::Logistic) {
    return z.unaryExpr([](double v) { return logistic(v); });
  }
  return z.cwiseMax(0.0);
}

// Derivative expressed through the activated value h.
Eigen::MatrixXd activation_grad(const Eigen::MatrixXd& h,
                                MlpConfig::Activation act) {
  if (act == MlpConfig::Activation::Logistic) {
    return h.unaryExpr([](double v) { return v * (1.0 - v); });
  }
  return h.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
}

}  // namespace

void TargetScaler::fit(const std::vector<TargetVector>& ys) {
  if (ys.empty()) throw std::invalid_argument("TargetScaler: no targets");
  const Eigen::Index m = ys.front().size();
  mean_ = Eigen::VectorXd::Zero(m);
  for (const auto& y : ys) mean_ += y;
  mean_ /= static_cast<double>(ys.size());
  Eigen::VectorXd var = Eigen::VectorXd::Zero(m);
  for (const auto& y : ys) var += (y - mean_).cwiseAbs2();
  var /= static_cast<double>(ys.size());
  stddev_ = var.cwiseSqrt().cwiseMax(kStdFloor);
}

TargetVector TargetScaler::scale(const TargetVector& y) const {
  if (!fitted()) return y;
  return (y - mean_).cwiseQuotient(stddev_);
}

TargetVector TargetScaler::unscale(const TargetVector& y) const {
  if (!fitted()) return y;
  return y.cwiseProduct(stddev_) + mean_;
}

void TargetScaler::restore(Eigen::VectorXd mean, Eigen::VectorXd stddev) {
  mean_ = std::move(mean);
  stddev_ = std::move(stddev);
}

Mlp::Mlp(MlpConfig config) : config_(std::move(config)) {
  if (config_.hidden_layers.empty()) {
    throw std::invalid_argument("Mlp: at least one hidden layer required");
  }
  for (int w : config_.hidden_layers) {
    if (w < 1) throw std::invalid_argument("Mlp: layer widths must be positive");
  }
  if (config_.l2_penalty < 0.0) {
    throw std::invalid_argument("Mlp: l2_penalty must be nonnegative");
  }
}

void Mlp::initialize(int input_dim, int output_dim, Rng& rng) {
  std::vector<int> dims;
  dims.push_back(input_dim);
  dims.insert(dims.end(), config_.hidden_layers.begin(),
              config_.hidden_layers.end());
  dims.push_back(output_dim);

  weights_.clear();
  biases_.clear();
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int fan_in = dims[l];
    const int fan_out = dims[l + 1];
    const double a = std::sqrt(6.0 / (fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-a, a);
    }
    weights_.push_back(std::move(w));
    biases_.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  initialized_ = true;
}

Mlp::Batch Mlp::assemble(const std::vector<FeatureVector>& xs,
                         const std::vector<TargetVector>& ys,
                         bool refit_scaler) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw std::invalid_argument("Mlp: empty or mismatched sample set");
  }
  if (refit_scaler && config_.output == MlpConfig::OutputLayer::Linear) {
    scaler_.fit(ys);
  }
  return assemble_const(xs, ys);
}

Mlp::Batch Mlp::assemble_const(const std::vector<FeatureVector>& xs,
                               const std::vector<TargetVector>& ys) const {
  Batch batch;
  const Eigen::Index n = xs.front().size();
  const Eigen::Index m = ys.front().size();
  batch.inputs.resize(static_cast<Eigen::Index>(xs.size()), n);
  batch.targets.resize(static_cast<Eigen::Index>(ys.size()), m);
  const bool scale = config_.output == MlpConfig::OutputLayer::Linear;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    batch.inputs.row(static_cast<Eigen::Index>(k)) = xs[k].transpose();
    batch.targets.row(static_cast<Eigen::Index>(k)) =
        (scale ? scaler_.scale(ys[k]) : ys[k]).transpose();
  }
  return batch;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& inputs) const {
  if (!initialized_) throw std::logic_error("Mlp: not initialized");
  Eigen::MatrixXd h = inputs;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd z = h * weights_[l].transpose();
    z.rowwise() += biases_[l].transpose();
    if (l + 1 < weights_.size()) {
      h = apply_activation(z, config_.activation);
    } else if (config_.output == MlpConfig::OutputLayer::Logistic) {
      h = z.unaryExpr([](double v) { return logistic(v); });
    } else {
      h = std::move(z);
    }
  }
  return h;
}

double Mlp::batch_loss(const Batch& batch) const {
  const Eigen::MatrixXd pred = forward(batch.inputs);
  const double n = static_cast<double>(batch.inputs.rows());
  double data = 0.0;
  if (config_.output == MlpConfig::OutputLayer::Linear) {
    data = (pred - batch.targets).squaredNorm() / n;
  } else {
    for (Eigen::Index r = 0; r < pred.rows(); ++r) {
      for (Eigen::Index c = 0; c < pred.cols(); ++c) {
        const double p = std::min(std::max(pred(r, c), 1e-12), 1.0 - 1e-12);
        const double y = batch.targets(r, c);
        data -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
      }
    }
    data /= n;
  }
  double penalty = 0.0;
  for (const auto& w : weights_) penalty += w.squaredNorm();
  // Penalty averaged per sample, matching the usual alpha semantics of MLP
  // trainers; an unnormalized penalty at the default strength forces the
  // zero-weight attractor under adaptive-moment updates.
  return data + 0.5 * config_.l2_penalty * penalty / n;
}

double Mlp::batch_loss_gradient(const Batch& batch,
                                std::vector<Eigen::MatrixXd>& grad_w,
                                std::vector<Eigen::VectorXd>& grad_b) const {
  const std::size_t layers = weights_.size();
  const double n = static_cast<double>(batch.inputs.rows());

  std::vector<Eigen::MatrixXd> activations(layers + 1);
  activations[0] = batch.inputs;
  for (std::size_t l = 0; l < layers; ++l) {
    Eigen::MatrixXd z = activations[l] * weights_[l].transpose();
    z.rowwise() += biases_[l].transpose();
    if (l + 1 < layers) {
      activations[l + 1] = apply_activation(z, config_.activation);
    } else if (config_.output == MlpConfig::OutputLayer::Logistic) {
      activations[l + 1] = z.unaryExpr([](double v) { return logistic(v); });
    } else {
      activations[l + 1] = std::move(z);
    }
  }
  const Eigen::MatrixXd& pred = activations[layers];

  double data = 0.0;
  Eigen::MatrixXd delta;  // dL/dz at the output layer
  if (config_.output == MlpConfig::OutputLayer::Linear) {
    data = (pred - batch.targets).squaredNorm() / n;
    delta = (2.0 / n) * (pred - batch.targets);
  } else {
    for (Eigen::Index r = 0; r < pred.rows(); ++r) {
      for (Eigen::Index c = 0; c < pred.cols(); ++c) {
        const double p = std::min(std::max(pred(r, c), 1e-12), 1.0 - 1e-12);
        const double y = batch.targets(r, c);
        data -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
      }
    }
    data /= n;
    // Logistic output with per-output cross-entropy: dL/dz = (p - y) / n.
    delta = (pred - batch.targets) / n;
  }

  grad_w.resize(layers);
  grad_b.resize(layers);
  double penalty = 0.0;
  for (std::size_t li = layers; li-- > 0;) {
    grad_w[li] = delta.transpose() * activations[li] +
                 (config_.l2_penalty / n) * weights_[li];
    grad_b[li] = delta.colwise().sum().transpose();
    if (li > 0) {
      delta = (delta * weights_[li])
                  .cwiseProduct(activation_grad(activations[li], config_.activation));
    }
    penalty += weights_[li].squaredNorm();
  }
  return data + 0.5 * config_.l2_penalty * penalty / n;
}

void Mlp::fit(const std::vector<FeatureVector>& xs,
              const std::vector<TargetVector>& ys, Rng& rng) {
  if (xs.empty()) throw std::invalid_argument("Mlp::fit: no labeled samples");
  const int input_dim = static_cast<int>(xs.front().size());
  const int output_dim = static_cast<int>(ys.front().size());

  const bool shape_ok = initialized_ &&
                        weights_.front().cols() == input_dim &&
                        weights_.back().rows() == output_dim;
  if (!config_.warm_start || !shape_ok) {
    initialize(input_dim, output_dim, rng);
  }

  const Batch batch = assemble(xs, ys, /*refit_scaler=*/true);

  // Adam state, reset every fit.
  std::vector<Eigen::MatrixXd> m_w(weights_.size()), v_w(weights_.size());
  std::vector<Eigen::VectorXd> m_b(weights_.size()), v_b(weights_.size());
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    m_w[l] = Eigen::MatrixXd::Zero(weights_[l].rows(), weights_[l].cols());
    v_w[l] = m_w[l];
    m_b[l] = Eigen::VectorXd::Zero(biases_[l].size());
    v_b[l] = m_b[l];
  }
  constexpr double beta1 = 0.9;
  constexpr double beta2 = 0.99;
  constexpr double adam_eps = 1e-8;

  loss_history_.clear();
  loss_history_.reserve(static_cast<std::size_t>(config_.max_epochs));
  std::vector<Eigen::MatrixXd> grad_w, snap_grad_w;
  std::vector<Eigen::VectorXd> grad_b, snap_grad_b;

  // Snapshot of the state a step departs from, so an uphill step can be
  // undone and retried with a smaller multiplier. The full batch is
  // deterministic, which makes the recorded loss history non-increasing by
  // construction.
  std::vector<Eigen::MatrixXd> snap_w, snap_v_w;
  std::vector<Eigen::VectorXd> snap_b, snap_v_b;
  double snap_b2t = 1.0;

  double lr_mult = 1.0;
  constexpr double kLrMultFloor = 0x1.0p-40;
  double prev_loss = std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;
  double b1t = 1.0, b2t = 1.0;
  int accepted = 0;
  const long max_total = 2L * config_.max_epochs + 100;
  for (long total = 0; total < max_total && accepted < config_.max_epochs; ++total) {
    double current = batch_loss_gradient(batch, grad_w, grad_b);
    const double slack = 1e-12 * std::max(1.0, std::abs(prev_loss));
    if (current > prev_loss + slack && lr_mult > kLrMultFloor) {
      // Reject: restore the pre-step parameters, restart the momentum so the
      // retry follows the fresh gradient (a descent direction), and halve the
      // step multiplier.
      weights_ = snap_w;
      biases_ = snap_b;
      for (std::size_t l = 0; l < weights_.size(); ++l) {
        m_w[l].setZero();
        m_b[l].setZero();
      }
      v_w = snap_v_w;
      v_b = snap_v_b;
      b1t = 1.0;
      b2t = snap_b2t;
      grad_w = snap_grad_w;
      grad_b = snap_grad_b;
      current = prev_loss;
      lr_mult *= 0.5;
    } else {
      loss_history_.push_back(current);
      ++accepted;
      lr_mult = std::min(1.0, lr_mult * 1.25);
      if (current < best - config_.tol) {
        best = current;
        stall = 0;
      } else if (++stall >= config_.patience) {
        break;
      }
      prev_loss = current;
      snap_w = weights_;
      snap_b = biases_;
      snap_v_w = v_w;
      snap_v_b = v_b;
      snap_b2t = b2t;
      snap_grad_w = grad_w;
      snap_grad_b = grad_b;
      if (accepted == config_.max_epochs) break;
    }

    const double lr = lr_mult * config_.learning_rate /
                      (1.0 + config_.lr_decay * accepted);
    b1t *= beta1;
    b2t *= beta2;
    const double m_corr = 1.0 / (1.0 - b1t);
    const double v_corr = 1.0 / (1.0 - b2t);
    for (std::size_t l = 0; l < weights_.size(); ++l) {
      m_w[l] = beta1 * m_w[l] + (1.0 - beta1) * grad_w[l];
      v_w[l] = beta2 * v_w[l] + (1.0 - beta2) * grad_w[l].cwiseAbs2();
      weights_[l] -= lr * (m_corr * m_w[l].array() /
                           ((v_corr * v_w[l].array()).sqrt() + adam_eps))
                              .matrix();
      m_b[l] = beta1 * m_b[l] + (1.0 - beta1) * grad_b[l];
      v_b[l] = beta2 * v_b[l] + (1.0 - beta2) * grad_b[l].cwiseAbs2();
      biases_[l] -= lr * (m_corr * m_b[l].array() /
                          ((v_corr * v_b[l].array()).sqrt() + adam_eps))
                             .matrix();
    }
  }
}

TargetVector Mlp::predict(const FeatureVector& x) const {
  if (!initialized_) throw std::logic_error("Mlp::predict: model not fitted");
  if (x.size() != weights_.front().cols()) {
    throw std::invalid_argument("Mlp::predict: dimension mismatch");
  }
  const Eigen::MatrixXd out = forward(x.transpose());
  TargetVector y = out.row(0).transpose();
  if (config_.output == MlpConfig::OutputLayer::Linear) {
    y = scaler_.unscale(y);
  }
  return y;
}

Eigen::VectorXd Mlp::parameters() const {
  Eigen::Index total = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    total += weights_[l].size() + biases_[l].size();
  }
  Eigen::VectorXd theta(total);
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) {
        theta[at++] = weights_[l](r, c);
      }
    }
    for (Eigen::Index r = 0; r < biases_[l].size(); ++r) {
      theta[at++] = biases_[l][r];
    }
  }
  return theta;
}

void Mlp::set_parameters(const Eigen::VectorXd& theta) {
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) {
        weights_[l](r, c) = theta[at++];
      }
    }
    for (Eigen::Index r = 0; r < biases_[l].size(); ++r) {
      biases_[l][r] = theta[at++];
    }
  }
  if (at != theta.size()) {
    throw std::invalid_argument("set_parameters: size mismatch");
  }
}

void Mlp::set_layer(int layer, Eigen::MatrixXd weights, Eigen::VectorXd biases) {
  weights_.at(static_cast<std::size_t>(layer)) = std::move(weights);
  biases_.at(static_cast<std::size_t>(layer)) = std::move(biases);
}

double Mlp::loss(const std::vector<FeatureVector>& xs,
                 const std::vector<TargetVector>& ys) const {
  return batch_loss(assemble_const(xs, ys));
}

Eigen::VectorXd Mlp::loss_gradient(const std::vector<FeatureVector>& xs,
                                   const std::vector<TargetVector>& ys) const {
  std::vector<Eigen::MatrixXd> grad_w;
  std::vector<Eigen::VectorXd> grad_b;
  batch_loss_gradient(assemble_const(xs, ys), grad_w, grad_b);
  Eigen::Index total = 0;
  for (std::size_t l = 0; l < grad_w.size(); ++l) {
    total += grad_w[l].size() + grad_b[l].size();
  }
  Eigen::VectorXd flat(total);
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < grad_w.size(); ++l) {
    for (Eigen::Index r = 0; r < grad_w[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < grad_w[l].cols(); ++c) {
        flat[at++] = grad_w[l](r, c);
      }
    }
    for (Eigen::Index r = 0; r < grad_b[l].size(); ++r) {
      flat[at++] = grad_b[l][r];
    }
  }
  return flat;
}

std::string Mlp::save_checkpoint() const {
  nlohmann::json doc;
  doc["activation"] =
      config_.activation == MlpConfig::Activation::Logistic ? "logistic" : "relu";
  doc["output"] = config_.output == MlpConfig::OutputLayer::Linear ? "linear"
                                                                   : "logistic";
  doc["l2_penalty"] = config_.l2_penalty;
  std::vector<int> layer_sizes;
  if (initialized_) {
    layer_sizes.push_back(static_cast<int>(weights_.front().cols()));
    for (const auto& w : weights_) layer_sizes.push_back(static_cast<int>(w.rows()));
  }
  doc["layer_sizes"] = layer_sizes;
  std::vector<std::vector<double>> flat_w, flat_b;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(weights_[l].size()));
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r) {
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) {
        w.push_back(weights_[l](r, c));
      }
    }
    flat_w.push_back(std::move(w));
    flat_b.emplace_back(biases_[l].data(), biases_[l].data() + biases_[l].size());
  }
  doc["weights"] = flat_w;
  doc["biases"] = flat_b;
  if (scaler_.fitted()) {
    doc["scaler"] = {
        {"mean", std::vector<double>(scaler_.mean().data(),
                                     scaler_.mean().data() + scaler_.mean().size())},
        {"stddev",
         std::vector<double>(scaler_.stddev().data(),
                             scaler_.stddev().data() + scaler_.stddev().size())}};
  }
  return doc.dump();
}

Mlp Mlp::load_checkpoint(const std::string& json_text) {
  const nlohmann::json doc = nlohmann::json::parse(json_text);
  MlpConfig config;
  config.activation = doc.at("activation").get<std::string>() == "logistic"
                          ? MlpConfig::Activation::Logistic
                          : MlpConfig::Activation::ReLU;
  config.output = doc.at("output").get<std::string>() == "linear"
                      ? MlpConfig::OutputLayer::Linear
                      : MlpConfig::OutputLayer::Logistic;
  config.l2_penalty = doc.at("l2_penalty").get<double>();
  const auto layer_sizes = doc.at("layer_sizes").get<std::vector<int>>();
  if (layer_sizes.size() < 3) {
    throw std::invalid_argument("checkpoint: at least one hidden layer required");
  }
  config.hidden_layers.assign(layer_sizes.begin() + 1, layer_sizes.end() - 1);

  Mlp model(config);
  const auto flat_w = doc.at("weights").get<std::vector<std::vector<double>>>();
  const auto flat_b = doc.at("biases").get<std::vector<std::vector<double>>>();
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const int rows = layer_sizes[l + 1];
    const int cols = layer_sizes[l];
    if (static_cast<int>(flat_w.at(l).size()) != rows * cols ||
        static_cast<int>(flat_b.at(l).size()) != rows) {
      throw std::invalid_argument("checkpoint: weight array size mismatch");
    }
    Eigen::MatrixXd w(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) w(r, c) = flat_w[l][static_cast<std::size_t>(r * cols + c)];
    }
    Eigen::VectorXd b =
        Eigen::Map<const Eigen::VectorXd>(flat_b[l].data(), rows);
    model.weights_.push_back(std::move(w));
    model.biases_.push_back(std::move(b));
  }
  model.initialized_ = true;
  if (doc.contains("scaler")) {
    const auto mean = doc["scaler"].at("mean").get<std::vector<double>>();
    const auto sd = doc["scaler"].at("stddev").get<std::vector<double>>();
    model.scaler_.restore(
        Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size())),
        Eigen::Map<const Eigen::VectorXd>(sd.data(), static_cast<Eigen::Index>(sd.size())));
  }
  return model;
}

std::unique_ptr<Predictor> make_mlp(const MlpConfig& config) {
  return std::make_unique<Mlp>(config);
}

}  // namespace ideal
