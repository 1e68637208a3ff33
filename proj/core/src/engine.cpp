#include "ideal/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ideal/init.hpp"

namespace ideal {

double acquisition(const AcquisitionConfig& cfg, const ScalingTransform& t,
                   const FeatureVector& x, const LearnerState& state,
                   const Predictor& predictor, double rho) {
  const TargetVector y_hat = predictor.predict(x);
  const Eigen::VectorXd s2 =
      idw_variance(t, cfg.weight_kind, cfg.eps, x, state, y_hat);

  Eigen::VectorXd d2(static_cast<Eigen::Index>(state.samples.size()));
  for (std::size_t k = 0; k < state.samples.size(); ++k) {
    d2[static_cast<Eigen::Index>(k)] = t.scaled_sq_distance(x, state.samples[k].x);
  }
  const double z = detail::distance_from_d2(cfg.weight_kind, cfg.eps, d2);

  double sum = 0.0;
  for (Eigen::Index i = 0; i < s2.size(); ++i) {
    const double c =
        cfg.target_weight ? cfg.target_weight(x, static_cast<int>(i)) : 1.0;
    sum += c * (s2[i] + cfg.delta * z);
  }
  return (1.0 + cfg.omega * rho) * sum;
}

namespace {

std::vector<int> available_indices(const LearnerState& state) {
  std::vector<int> out;
  out.reserve(state.consumed.size());
  for (std::size_t k = 0; k < state.consumed.size(); ++k) {
    if (!state.consumed[k]) out.push_back(static_cast<int>(k));
  }
  return out;
}

int nearest_available(const std::vector<FeatureVector>& pool,
                      const LearnerState& state, const ScalingTransform& t,
                      const FeatureVector& target) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (state.consumed[k]) continue;
    const double d = t.scaled_sq_distance(pool[k], target);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  return best;
}

double min_sq_distance_to_samples(const LearnerState& state,
                                  const ScalingTransform& t,
                                  const FeatureVector& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : state.samples) {
    best = std::min(best, t.scaled_sq_distance(x, s.x));
  }
  return best;
}

}  // namespace

int select_next_pool(const EngineConfig& engine_cfg, const AcquisitionConfig& acq_cfg,
                     const LearnerState& state, const Predictor& predictor,
                     const std::vector<FeatureVector>& pool,
                     const ScalingTransform& t,
                     const std::optional<DensityTable>& density, Rng& rng) {
  const auto available = available_indices(state);
  if (available.empty()) throw std::runtime_error("pool exhausted");

  if (static_cast<int>(pool.size()) <= engine_cfg.pool_enum_threshold) {
    int best = -1;
    double best_a = -std::numeric_limits<double>::infinity();
    for (int k : available) {
      const double rho = density ? density->rho[static_cast<std::size_t>(k)] : 1.0;
      const double a = acquisition(acq_cfg, t, pool[k], state, predictor, rho);
      if (a > best_a) {
        best_a = a;
        best = k;
      }
    }
    return best;
  }

  // Large pool: optimize over the bounding box as in population mode (density
  // is defined per pool point, so rho = 1 here), then snap to the nearest
  // unconsumed pool point in scaled space.
  const auto objective = [&](const FeatureVector& x) {
    return acquisition(acq_cfg, t, x, state, predictor, 1.0);
  };
  const auto [x_star, value] =
      pso_maximize(objective, t.bounds(), engine_cfg.pso, rng);
  (void)value;
  return nearest_available(pool, state, t, x_star);
}

FeatureVector select_next_population(
    const EngineConfig& engine_cfg, const AcquisitionConfig& acq_cfg,
    const LearnerState& state, const Predictor& predictor,
    const ScalingTransform& t,
    const std::function<bool(const FeatureVector&)>& known_constraint, Rng& rng) {
  const auto objective = [&](const FeatureVector& x) {
    if (known_constraint && !known_constraint(x)) {
      return -std::numeric_limits<double>::infinity();
    }
    return acquisition(acq_cfg, t, x, state, predictor, 1.0);
  };
  const auto [x_best, value] =
      pso_maximize(objective, t.bounds(), engine_cfg.pso, rng);
  if (!std::isfinite(value)) {
    throw std::runtime_error("select_next_population: no admissible point found");
  }
  return x_best;
}

int select_next_greedy_pool(const LearnerState& state,
                            const std::vector<FeatureVector>& pool,
                            const ScalingTransform& t) {
  if (state.samples.empty()) {
    throw std::invalid_argument("greedy selection requires queried samples");
  }
  int best = -1;
  double best_d = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (state.consumed[k]) continue;
    const double d = min_sq_distance_to_samples(state, t, pool[k]);
    if (d > best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  if (best < 0) throw std::runtime_error("pool exhausted");
  return best;
}

FeatureVector select_next_greedy_population(
    const LearnerState& state, const ScalingTransform& t, const Bounds& bounds,
    const std::function<bool(const FeatureVector&)>& known_constraint,
    const PsoConfig& pso, Rng& rng) {
  if (state.samples.empty()) {
    throw std::invalid_argument("greedy selection requires queried samples");
  }
  const auto objective = [&](const FeatureVector& x) {
    if (known_constraint && !known_constraint(x)) {
      return -std::numeric_limits<double>::infinity();
    }
    return min_sq_distance_to_samples(state, t, x);
  };
  const auto [x_best, value] = pso_maximize(objective, bounds, pso, rng);
  if (!std::isfinite(value)) {
    throw std::runtime_error("greedy selection: no admissible point found");
  }
  return x_best;
}

int select_next_random_pool(const LearnerState& state, Rng& rng) {
  const auto available = available_indices(state);
  if (available.empty()) throw std::runtime_error("pool exhausted");
  return available[rng.uniform_int(static_cast<int>(available.size()))];
}

FeatureVector select_next_random_population(
    const Bounds& bounds,
    const std::function<bool(const FeatureVector&)>& known_constraint, Rng& rng) {
  const int n = bounds.dim();
  for (int attempt = 0; attempt < 100000; ++attempt) {
    FeatureVector x(n);
    for (int d = 0; d < n; ++d) x[d] = rng.uniform(bounds.x_min[d], bounds.x_max[d]);
    if (!known_constraint || known_constraint(x)) return x;
  }
  throw std::runtime_error("random selection: known constraint rejected all draws");
}

namespace {

struct FitData {
  std::vector<FeatureVector> xs;
  std::vector<TargetVector> ys;
};

FitData labeled_samples(const LearnerState& state) {
  FitData data;
  data.xs.reserve(state.feasible_indices.size());
  data.ys.reserve(state.feasible_indices.size());
  for (int idx : state.feasible_indices) {
    data.xs.push_back(state.samples[idx].x);
    data.ys.push_back(*state.samples[idx].result.target);
  }
  return data;
}

}  // namespace

RunResult run(const EngineConfig& engine_cfg, const AcquisitionConfig& acq_cfg,
              const ProblemSpec& spec, Oracle& oracle,
              const PredictorFactory& make_predictor, Rng& rng,
              const MetricFn& metric) {
  if (engine_cfg.n_init > engine_cfg.n_max) {
    throw std::invalid_argument("run: n_init > n_max");
  }
  if (engine_cfg.batch_period < 1) {
    throw std::invalid_argument("run: batch period must be >= 1");
  }

  RunResult result;
  const Bounds bounds = compute_bounds(spec);
  result.transform = ScalingTransform(bounds);
  const ScalingTransform& t = result.transform;

  const bool pool_mode = spec.mode == ProblemSpec::Mode::Pool;
  if (pool_mode) result.state.init_pool_mask(static_cast<int>(spec.pool.size()));

  InitResult init = pool_mode
                        ? pool_init(spec.pool, t, oracle, engine_cfg.n_init,
                                    engine_cfg.n_max, rng)
                        : lhs_init(bounds, spec.known_constraint, oracle,
                                   engine_cfg.n_init, engine_cfg.n_max, rng);
  for (auto& s : init.queried) {
    const bool feasible = s.result.feasible();
    result.state.add_sample(std::move(s.x), std::move(s.result), s.pool_index);
    result.trace.records.push_back({result.state.query_count,
                                    result.state.samples.back().x, feasible,
                                    s.pool_index});
  }
  result.trace.n_init_total = init.n_init_total;
  if (!init.success) {
    result.init_success = false;
    return result;
  }

  std::optional<DensityTable> density;
  if (pool_mode && engine_cfg.strategy == Strategy::Ideal && acq_cfg.omega > 0.0) {
    const int k_nn = engine_cfg.density_k_nn > 0 ? engine_cfg.density_k_nn
                                                 : spec.feature_dim;
    density = compute_density(t, spec.pool, k_nn);
  }

  result.predictor = std::make_unique<ScaledInputPredictor>(t, make_predictor());
  Predictor& predictor = *result.predictor;

  const auto refit = [&] {
    const FitData data = labeled_samples(result.state);
    predictor.fit(data.xs, data.ys, rng);
    if (metric) {
      result.trace.metric_curve.push_back(
          {result.state.query_count, metric(predictor, result.state)});
    }
  };

  refit();  // initial fit on the collected samples
  int pending_feasible = 0;
  bool last_feasible = true;

  while (result.state.query_count < engine_cfg.n_max &&
         !(pool_mode && result.state.pool_exhausted())) {
    if (last_feasible && pending_feasible >= engine_cfg.batch_period) {
      refit();
      pending_feasible = 0;
    }

    FeatureVector x;
    int pool_index = -1;
    switch (engine_cfg.strategy) {
      case Strategy::Ideal:
        if (pool_mode) {
          pool_index = select_next_pool(engine_cfg, acq_cfg, result.state,
                                        predictor, spec.pool, t, density, rng);
          x = spec.pool[pool_index];
        } else {
          x = select_next_population(engine_cfg, acq_cfg, result.state,
                                     predictor, t, spec.known_constraint, rng);
        }
        break;
      case Strategy::Greedy:
        if (pool_mode) {
          pool_index = select_next_greedy_pool(result.state, spec.pool, t);
          x = spec.pool[pool_index];
        } else {
          x = select_next_greedy_population(result.state, t, bounds,
                                            spec.known_constraint,
                                            engine_cfg.pso, rng);
        }
        break;
      case Strategy::Random:
        if (pool_mode) {
          pool_index = select_next_random_pool(result.state, rng);
          x = spec.pool[pool_index];
        } else {
          x = select_next_random_population(bounds, spec.known_constraint, rng);
        }
        break;
    }

    QueryResult qr = oracle.query(x);
    last_feasible = qr.feasible();
    if (last_feasible) ++pending_feasible;
    result.state.add_sample(std::move(x), std::move(qr), pool_index);
    result.trace.records.push_back({result.state.query_count,
                                    result.state.samples.back().x, last_feasible,
                                    pool_index});
  }

  if (pending_feasible > 0) refit();

  result.init_success = true;
  return result;
}

RunResult run(const EngineConfig& engine_cfg, const AcquisitionConfig& acq_cfg,
              const MlpConfig& predictor_cfg, const ProblemSpec& spec,
              Oracle& oracle, Rng& rng, const MetricFn& metric) {
  return run(engine_cfg, acq_cfg, spec, oracle,
             [&predictor_cfg] { return make_mlp(predictor_cfg); }, rng, metric);
}

}  // namespace ideal
