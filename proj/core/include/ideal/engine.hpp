#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ideal/density.hpp"
#include "ideal/idw.hpp"
#include "ideal/predictor.hpp"
#include "ideal/pso.hpp"
#include "ideal/rng.hpp"
#include "ideal/types.hpp"

namespace ideal {

enum class Strategy { Ideal, Greedy, Random };

// Weights of the acquisition score
//   a(x) = (1 + omega * rho(x)) * sum_i c_i(x) * (s_i^2(x) + delta * z(x)).
// delta trades prediction uncertainty against pure exploration; omega weighs
// pool density (population mode has rho == 1). target_weight is c_i(x),
// constant 1 when unset.
struct AcquisitionConfig {
  double delta = 1.0;
  double omega = 0.0;
  WeightKind weight_kind = WeightKind::Exponential;
  double eps = kCoincidenceEps;
  std::function<double(const FeatureVector&, int)> target_weight;
};

struct EngineConfig {
  int n_init = 10;
  int n_max = 100;
  int batch_period = 1;            // retrain after this many feasible queries
  int pool_enum_threshold = 20000; // larger pools switch to PSO + nearest point
  int density_k_nn = 0;            // 0: use the feature dimension
  Strategy strategy = Strategy::Ideal;
  PsoConfig pso;
};

// Metric snapshots taken after each retrain; `queries` is the cumulative
// oracle-call count including infeasible queries.
struct MetricPoint {
  int queries = 0;
  double value = 0.0;
};

struct QueryTrace {
  struct Record {
    int query_index = 0;  // 1-based oracle-call counter
    FeatureVector x;
    bool feasible = false;
    int pool_index = -1;
  };
  std::vector<Record> records;
  std::vector<MetricPoint> metric_curve;
  int n_init_total = 0;
};

struct RunResult {
  bool init_success = false;
  LearnerState state;
  QueryTrace trace;
  std::unique_ptr<Predictor> predictor;
  ScalingTransform transform;
};

using PredictorFactory = std::function<std::unique_ptr<Predictor>()>;
// Optional per-retrain evaluation, recorded into the trace's metric curve.
using MetricFn = std::function<double(const Predictor&, const LearnerState&)>;

// Acquisition score at x. rho is the density of x (1 in population mode).
// Requires a fitted predictor and at least one labeled sample.
double acquisition(const AcquisitionConfig& cfg, const ScalingTransform& t,
                   const FeatureVector& x, const LearnerState& state,
                   const Predictor& predictor, double rho = 1.0);

// Argmax of the acquisition over unconsumed pool indices; enumeration up to
// the configured threshold, PSO over the bounding box plus nearest unconsumed
// point beyond it. Ties break to the lowest index.
int select_next_pool(const EngineConfig& engine_cfg, const AcquisitionConfig& acq_cfg,
                     const LearnerState& state, const Predictor& predictor,
                     const std::vector<FeatureVector>& pool,
                     const ScalingTransform& t,
                     const std::optional<DensityTable>& density, Rng& rng);

// PSO maximization of the acquisition over the transform's box;
// known-constraint violations are rejected inside the objective. Throws when
// no admissible point is found.
FeatureVector select_next_population(
    const EngineConfig& engine_cfg, const AcquisitionConfig& acq_cfg,
    const LearnerState& state, const Predictor& predictor,
    const ScalingTransform& t,
    const std::function<bool(const FeatureVector&)>& known_constraint, Rng& rng);

// Baseline: candidate maximizing the minimum squared scaled distance to every
// queried sample.
int select_next_greedy_pool(const LearnerState& state,
                            const std::vector<FeatureVector>& pool,
                            const ScalingTransform& t);
FeatureVector select_next_greedy_population(
    const LearnerState& state, const ScalingTransform& t, const Bounds& bounds,
    const std::function<bool(const FeatureVector&)>& known_constraint,
    const PsoConfig& pso, Rng& rng);

// Baseline: uniform over unconsumed pool indices / uniform over the box
// (rejection-sampled against the known constraint).
int select_next_random_pool(const LearnerState& state, Rng& rng);
FeatureVector select_next_random_population(
    const Bounds& bounds,
    const std::function<bool(const FeatureVector&)>& known_constraint, Rng& rng);

// Full active-learning loop: initialization (K-means on pools, LHS on
// populations), per-strategy query selection, oracle calls, and periodic
// retraining until the query budget is spent. Returns the failure declaration
// when initialization cannot collect n_init feasible samples within budget.
RunResult run(const EngineConfig& engine_cfg, const AcquisitionConfig& acq_cfg,
              const ProblemSpec& spec, Oracle& oracle,
              const PredictorFactory& make_predictor, Rng& rng,
              const MetricFn& metric = nullptr);

// Convenience overload wiring up the built-in MLP.
RunResult run(const EngineConfig& engine_cfg, const AcquisitionConfig& acq_cfg,
              const MlpConfig& predictor_cfg, const ProblemSpec& spec,
              Oracle& oracle, Rng& rng, const MetricFn& metric = nullptr);

}  // namespace ideal
