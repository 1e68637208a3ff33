// Acceptance suite: runs every contract criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits nonzero if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "ideal/bench.hpp"
#include "ideal/data.hpp"
#include "ideal/engine.hpp"
#include "ideal/init.hpp"
#include "ideal/metrics.hpp"

using namespace ideal;

namespace {

constexpr std::uint64_t kMasterSeed = 20260811;
constexpr int kRuns = 50;
constexpr int kWorkers = 2;

int g_failures = 0;

void report_line(const std::string& name, bool pass, const std::string& detail,
                 double seconds) {
  std::printf("%s %s (%s) [%.1fs]\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <typename Fn>
void criterion(const std::string& name, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    std::tie(pass, detail) = fn();
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report_line(name, pass, detail, seconds);
}

FeatureVector vec1(double x) {
  FeatureVector v(1);
  v[0] = x;
  return v;
}

TargetVector scalar(double y) {
  TargetVector v(1);
  v[0] = y;
  return v;
}

BenchmarkProblem quartic_problem(double noise, double delta) {
  BenchmarkProblem problem;
  problem.make_spec = [](Rng&) {
    std::vector<FeatureVector> pool;
    pool.reserve(1000);
    for (int i = 0; i < 1000; ++i) pool.push_back(vec1(-3.0 + 6.0 * i / 999.0));
    return ProblemSpec::pool_problem(std::move(pool), 1, TargetKind::Regression);
  };
  problem.make_oracle = [noise](Rng& rng) {
    return std::make_unique<QuarticSineOracle>(noise, rng.next_u64());
  };
  problem.make_eval = [](const ProblemSpec& spec) {
    EvalSet eval;
    eval.kind = TargetKind::Regression;
    eval.descriptor = "grid-1000";
    Rng noiseless(0);
    for (const auto& x : spec.pool) {
      eval.xs.push_back(x);
      eval.truth.push_back(scalar(quartic_sine(x[0], 0.0, noiseless)));
    }
    return eval;
  };
  problem.predictor.hidden_layers = {5, 5};
  problem.predictor.warm_start = false;
  problem.predictor.l2_penalty = 1e-4;
  problem.engine.n_init = 4;
  problem.engine.n_max = 30;
  problem.acquisition.delta = delta;
  problem.acquisition.omega = 0.0;
  return problem;
}

BenchmarkProblem circle_problem(bool constrained) {
  BenchmarkProblem problem;
  problem.make_spec = [](Rng& rng) {
    std::vector<FeatureVector> pool;
    pool.reserve(1000);
    for (int i = 0; i < 1000; ++i) {
      FeatureVector x(2);
      x[0] = rng.uniform(-2.0, 2.0);
      x[1] = rng.uniform(-2.0, 2.0);
      pool.push_back(std::move(x));
    }
    return ProblemSpec::pool_problem(std::move(pool), 1, TargetKind::Classification);
  };
  problem.make_oracle = [constrained](Rng&) {
    return std::make_unique<CircleOracle>(constrained);
  };
  problem.make_eval = [constrained](const ProblemSpec& spec) {
    EvalSet eval;
    eval.kind = TargetKind::Classification;
    eval.descriptor = constrained ? "feasible-pool" : "full-pool";
    for (const auto& x : spec.pool) {
      const QueryResult r = circle_indicator(x, constrained);
      if (!r.feasible()) continue;
      eval.xs.push_back(x);
      eval.truth.push_back(*r.target);
    }
    return eval;
  };
  problem.predictor.hidden_layers = {10, 10};
  problem.predictor.output = MlpConfig::OutputLayer::Logistic;
  problem.predictor.warm_start = true;
  problem.engine.n_init = 10;
  problem.engine.n_max = 100;
  problem.acquisition.delta = 5.0;
  problem.acquisition.omega = 0.0;
  return problem;
}

const StrategyReport& strategy_of(const ExperimentReport& report,
                                  const std::string& label) {
  for (const auto& s : report.strategies) {
    if (s.label == label) return s;
  }
  throw std::runtime_error("strategy missing from report: " + label);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---- criterion 6 helpers -------------------------------------------------

class ConstPredictor : public Predictor {
 public:
  explicit ConstPredictor(double value) : value_(value) {}
  void fit(const std::vector<FeatureVector>&, const std::vector<TargetVector>&,
           Rng&) override {}
  TargetVector predict(const FeatureVector&) const override {
    return scalar(value_);
  }
  bool supports_warm_start() const override { return false; }
  bool fitted() const override { return true; }

 private:
  double value_;
};

bool invariant_z_bounds(std::string& why) {
  Rng rng(101);
  const ScalingTransform t({vec1(-2), vec1(2)});
  std::vector<FeatureVector> samples;
  for (int k = 0; k < 8; ++k) samples.push_back(vec1(rng.uniform(-2, 2)));
  for (const auto& s : samples) {
    if (idw_distance(t, WeightKind::Exponential, kCoincidenceEps, s, samples) !=
        0.0) {
      why = "z not exactly 0 at a queried sample";
      return false;
    }
  }
  for (int trial = 0; trial < 2000; ++trial) {
    const FeatureVector x = vec1(rng.uniform(-2.5, 2.5));
    const double z =
        idw_distance(t, WeightKind::Exponential, kCoincidenceEps, x, samples);
    if (z < 0.0 || z > 1.0) {
      why = "z out of [0,1]";
      return false;
    }
  }
  return true;
}

bool invariant_s2(std::string& why) {
  Rng rng(102);
  const ScalingTransform t({vec1(-1), vec1(1)});
  LearnerState state;
  std::vector<double> labels;
  for (int k = 0; k < 6; ++k) {
    const double y = rng.uniform(-3, 3);
    labels.push_back(y);
    state.add_sample(vec1(rng.uniform(-1, 1)), QueryResult::labeled(scalar(y)));
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const FeatureVector x = vec1(rng.uniform(-1, 1));
    const auto s2 = idw_variance(t, WeightKind::Exponential, kCoincidenceEps, x,
                                 state, scalar(rng.uniform(-3, 3)));
    if (s2[0] < 0.0) {
      why = "s^2 negative";
      return false;
    }
  }
  // Interpolated sample: prediction equals the stored label.
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const auto s2 =
        idw_variance(t, WeightKind::Exponential, kCoincidenceEps,
                     state.samples[k].x, state, scalar(labels[k]));
    if (s2[0] != 0.0) {
      why = "s^2 not exactly 0 at an interpolated sample";
      return false;
    }
  }
  return true;
}

bool invariant_coefficients(std::string& why) {
  Rng rng(103);
  const ScalingTransform t({vec1(-2), vec1(2)});
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<FeatureVector> samples;
    const int n = 1 + rng.uniform_int(10);
    for (int k = 0; k < n; ++k) samples.push_back(vec1(rng.uniform(-2, 2)));
    const auto kind = trial % 2 ? WeightKind::Basic : WeightKind::Exponential;
    const Eigen::VectorXd v = idw_coefficients(
        t, kind, kCoincidenceEps, vec1(rng.uniform(-2, 2)), samples);
    if (std::abs(v.sum() - 1.0) > 1e-9) {
      why = "coefficients do not sum to 1";
      return false;
    }
  }
  return true;
}

bool invariant_density(std::string& why) {
  Rng rng(104);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<FeatureVector> pool;
    const int m = 8 + rng.uniform_int(40);
    for (int i = 0; i < m; ++i) {
      FeatureVector x(2);
      x[0] = rng.uniform(-1, 1);
      x[1] = rng.uniform(-1, 1);
      pool.push_back(std::move(x));
    }
    const ScalingTransform t(compute_bounds(
        ProblemSpec::pool_problem(pool, 1, TargetKind::Regression)));
    const DensityTable table = compute_density(t, pool, 2);
    double max_rho = 0.0;
    for (double r : table.rho) {
      if (r <= 0.0 || r > 1.0 + 1e-12) {
        why = "rho outside (0,1]";
        return false;
      }
      max_rho = std::max(max_rho, r);
    }
    if (std::abs(max_rho - 1.0) > 1e-12) {
      why = "max rho != 1";
      return false;
    }
  }
  return true;
}

bool invariant_scaling_argmax(std::string& why) {
  Rng gen(105);
  std::vector<FeatureVector> pool;
  std::vector<TargetVector> labels;
  for (int i = 0; i < 60; ++i) {
    FeatureVector x(2);
    x[0] = gen.uniform(-2, 2);
    x[1] = gen.uniform(0, 5);
    pool.push_back(x);
    labels.push_back(scalar(std::sin(x[0]) + 0.3 * x[1]));
  }
  std::vector<FeatureVector> mapped;
  for (const auto& x : pool) {
    FeatureVector y(2);
    y[0] = 8.0 * x[0];  // power-of-two factors keep sigma bit-identical
    y[1] = 0.25 * x[1];
    mapped.push_back(y);
  }
  const auto select_sequence = [&](const std::vector<FeatureVector>& points) {
    DatasetOracle oracle(points, labels);
    const auto spec = ProblemSpec::pool_problem(points, 1, TargetKind::Regression);
    EngineConfig ecfg;
    ecfg.n_init = 4;
    ecfg.n_max = 16;
    AcquisitionConfig acfg;
    acfg.delta = 1.0;
    MlpConfig mlp;
    mlp.hidden_layers = {5, 5};
    mlp.max_epochs = 300;
    Rng rng(106);
    const RunResult r = run(ecfg, acfg, mlp, spec, oracle, rng);
    std::vector<int> seq;
    for (const auto& rec : r.trace.records) seq.push_back(rec.pool_index);
    return seq;
  };
  if (select_sequence(pool) != select_sequence(mapped)) {
    why = "selected index sequences differ under per-feature rescaling";
    return false;
  }
  return true;
}

bool invariant_enumeration(std::string& why) {
  Rng rng(107);
  std::vector<FeatureVector> pool;
  for (int i = 0; i < 1000; ++i) {
    FeatureVector x(2);
    x[0] = rng.uniform(-1, 1);
    x[1] = rng.uniform(-1, 1);
    pool.push_back(std::move(x));
  }
  const ScalingTransform t(compute_bounds(
      ProblemSpec::pool_problem(pool, 1, TargetKind::Regression)));
  LearnerState state;
  state.init_pool_mask(1000);
  for (int k = 0; k < 25; ++k) {
    const int idx = rng.uniform_int(1000);
    if (state.consumed[idx]) continue;
    state.add_sample(pool[idx],
                     k % 5 == 4 ? QueryResult::infeasible()
                                : QueryResult::labeled(scalar(pool[idx].sum())),
                     idx);
  }
  const ConstPredictor predictor(0.2);
  EngineConfig ecfg;
  AcquisitionConfig acfg;
  acfg.delta = 2.0;
  Rng sel_rng(108);
  const int chosen = select_next_pool(ecfg, acfg, state, predictor, pool, t,
                                      std::nullopt, sel_rng);

  int best = -1;
  double best_a = -std::numeric_limits<double>::infinity();
  std::vector<FeatureVector> all;
  for (const auto& s : state.samples) all.push_back(s.x);
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (state.consumed[k]) continue;
    const auto s2 = idw_variance(t, acfg.weight_kind, acfg.eps, pool[k], state,
                                 predictor.predict(pool[k]));
    const double z = idw_distance(t, acfg.weight_kind, acfg.eps, pool[k], all);
    const double a = s2.sum() + acfg.delta * z;
    if (a > best_a) {
      best_a = a;
      best = static_cast<int>(k);
    }
  }
  if (chosen != best) {
    why = "enumeration argmax != brute-force argmax";
    return false;
  }
  return true;
}

bool invariant_greedy(std::string& why) {
  Rng rng(109);
  std::vector<FeatureVector> pool;
  for (int i = 0; i < 500; ++i) pool.push_back(vec1(rng.uniform(-5, 5)));
  const ScalingTransform t(compute_bounds(
      ProblemSpec::pool_problem(pool, 1, TargetKind::Regression)));
  LearnerState state;
  state.init_pool_mask(static_cast<int>(pool.size()));
  for (int k = 0; k < 12; ++k) {
    const int idx = rng.uniform_int(static_cast<int>(pool.size()));
    if (state.consumed[idx]) continue;
    state.add_sample(pool[idx], QueryResult::labeled(scalar(0.0)), idx);
  }
  const int chosen = select_next_greedy_pool(state, pool, t);
  int best = -1;
  double best_d = -1.0;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (state.consumed[k]) continue;
    double min_d = std::numeric_limits<double>::infinity();
    for (const auto& s : state.samples) {
      min_d = std::min(min_d, t.scaled_sq_distance(pool[k], s.x));
    }
    if (min_d > best_d) {
      best_d = min_d;
      best = static_cast<int>(k);
    }
  }
  if (chosen != best) {
    why = "greedy selection != brute-force max-min";
    return false;
  }
  return true;
}

bool invariant_gradients(std::string& why) {
  for (const bool classification : {false, true}) {
    MlpConfig cfg;
    cfg.hidden_layers = {4, 3};
    if (classification) cfg.output = MlpConfig::OutputLayer::Logistic;
    Mlp model(cfg);
    Rng rng(classification ? 111 : 110);
    model.initialize(2, 2, rng);
    std::vector<FeatureVector> xs;
    std::vector<TargetVector> ys;
    for (int k = 0; k < 10; ++k) {
      FeatureVector x(2);
      x[0] = rng.uniform(-2, 2);
      x[1] = rng.uniform(-2, 2);
      TargetVector y(2);
      for (int i = 0; i < 2; ++i) {
        y[i] = classification ? static_cast<double>(rng.uniform_int(2))
                              : rng.uniform(-2, 2);
      }
      xs.push_back(std::move(x));
      ys.push_back(std::move(y));
    }
    const Eigen::VectorXd analytic = model.loss_gradient(xs, ys);
    const Eigen::VectorXd theta = model.parameters();
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(theta[i]));
      Eigen::VectorXd up = theta, down = theta;
      up[i] += h;
      down[i] -= h;
      model.set_parameters(up);
      const double f_up = model.loss(xs, ys);
      model.set_parameters(down);
      const double f_down = model.loss(xs, ys);
      model.set_parameters(theta);
      const double numeric = (f_up - f_down) / (2.0 * h);
      const double scale =
          std::max({1e-6, std::abs(numeric), std::abs(analytic[i])});
      if (std::abs(numeric - analytic[i]) / scale > 1e-4) {
        why = "gradient mismatch beyond 1e-4 relative";
        return false;
      }
    }
  }
  return true;
}

bool invariant_lhs(std::string& why) {
  Rng rng(112);
  for (int trial = 0; trial < 20; ++trial) {
    const int count = 2 + rng.uniform_int(15);
    Bounds b;
    b.x_min = Eigen::Vector3d(-2, 0, 10);
    b.x_max = Eigen::Vector3d(1, 5, 11);
    const auto pts = lhs_sample(b, count, rng);
    for (int d = 0; d < 3; ++d) {
      std::vector<int> hist(count, 0);
      for (const auto& p : pts) {
        const double u = (p[d] - b.x_min[d]) / (b.x_max[d] - b.x_min[d]);
        ++hist[std::min(count - 1, static_cast<int>(u * count))];
      }
      for (int c : hist) {
        if (c != 1) {
          why = "LHS stratum with count != 1";
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  std::printf("acceptance suite: %d runs per configuration, master seed %llu\n",
              kRuns, static_cast<unsigned long long>(kMasterSeed));

  ExperimentReport quartic_base;  // shared by criteria 1 and 2 (delta = 0)

  criterion("criterion 1: quartic-sine strategy ordering", [&] {
    const auto problem = quartic_problem(0.0, 0.0);
    quartic_base = run_benchmark(problem,
                                 {Strategy::Ideal, Strategy::Greedy, Strategy::Random},
                                 kRuns, kMasterSeed, kWorkers, "c1", "{}");
    const double ideal = strategy_of(quartic_base, "ideal").median_final;
    const double greedy = strategy_of(quartic_base, "greedy").median_final;
    const double random = strategy_of(quartic_base, "random").median_final;
    const bool pass = ideal < greedy && greedy < random && ideal <= 0.65 * random;
    return std::make_pair(pass, "ideal=" + fmt(ideal) + " greedy=" + fmt(greedy) +
                                    " random=" + fmt(random) +
                                    " ratio=" + fmt(ideal / random));
  });

  criterion("criterion 1b: per-run final RMSE improves on the initial model", [&] {
    const auto& runs = strategy_of(quartic_base, "ideal").runs;
    int improved = 0;
    for (const auto& run : runs) {
      if (!run.init_failure && !run.curve.empty() &&
          run.curve.back().value < run.curve.front().value) {
        ++improved;
      }
    }
    return std::make_pair(improved >= 45,
                          "improved in " + std::to_string(improved) + "/50 runs");
  });

  criterion("criterion 2: delta-insensitivity (max/min <= 1.5)", [&] {
    std::vector<double> finals{strategy_of(quartic_base, "ideal").median_final};
    for (const double delta : {1.0, 5.0, 10.0}) {
      const auto report = run_benchmark(quartic_problem(0.0, delta),
                                        {Strategy::Ideal}, kRuns, kMasterSeed,
                                        kWorkers, "c2", "{}");
      finals.push_back(strategy_of(report, "ideal").median_final);
    }
    const double lo = *std::min_element(finals.begin(), finals.end());
    const double hi = *std::max_element(finals.begin(), finals.end());
    std::string detail = "medians:";
    for (double f : finals) detail += " " + fmt(f);
    detail += " max/min=" + fmt(hi / lo);
    return std::make_pair(hi / lo <= 1.5, detail);
  });

  criterion("criterion 3: ordering preserved under noise", [&] {
    bool pass = true;
    std::string detail;
    for (const double noise : {1.0, 2.0}) {
      const auto report = run_benchmark(
          quartic_problem(noise, 0.0),
          {Strategy::Ideal, Strategy::Greedy, Strategy::Random}, kRuns,
          kMasterSeed, kWorkers, "c3", "{}");
      const double ideal = strategy_of(report, "ideal").median_final;
      const double greedy = strategy_of(report, "greedy").median_final;
      const double random = strategy_of(report, "random").median_final;
      pass = pass && ideal < greedy && greedy < random;
      detail += "sigma=" + fmt(noise) + ": " + fmt(ideal) + "<" + fmt(greedy) +
                "<" + fmt(random) + "  ";
    }
    return std::make_pair(pass, detail);
  });

  criterion("criterion 4: circle classification accuracy", [&] {
    const auto report = run_benchmark(circle_problem(false),
                                      {Strategy::Ideal, Strategy::Random}, kRuns,
                                      kMasterSeed, kWorkers, "c4", "{}");
    const auto& ideal = strategy_of(report, "ideal");
    const auto& random = strategy_of(report, "random");
    const bool pass = ideal.median_final >= ideal.median_initial + 0.05 &&
                      ideal.median_final > random.median_final;
    return std::make_pair(
        pass, "ideal " + fmt(ideal.median_initial) + " -> " +
                  fmt(ideal.median_final) + ", random final " +
                  fmt(random.median_final));
  });

  criterion("criterion 5: unknown-constraint avoidance", [&] {
    const auto report = run_benchmark(circle_problem(true),
                                      {Strategy::Ideal, Strategy::Random}, kRuns,
                                      kMasterSeed, kWorkers, "c5", "{}");
    const auto fraction_median = [](const StrategyReport& s) {
      std::vector<double> fr;
      for (const auto& run : s.runs) {
        if (!run.init_failure && run.post_init_queries > 0) {
          fr.push_back(static_cast<double>(run.post_init_infeasible) /
                       run.post_init_queries);
        }
      }
      return median(fr);
    };
    const double ideal = fraction_median(strategy_of(report, "ideal"));
    const double random = fraction_median(strategy_of(report, "random"));
    return std::make_pair(ideal < random, "median infeasible fraction ideal=" +
                                              fmt(ideal) + " random=" + fmt(random));
  });

  criterion("criterion 6: invariant suite", [&] {
    std::string why;
    const std::vector<std::pair<std::string, std::function<bool(std::string&)>>>
        checks{{"z-bounds", invariant_z_bounds},
               {"s2", invariant_s2},
               {"coefficient-sum", invariant_coefficients},
               {"density", invariant_density},
               {"scaling-argmax", invariant_scaling_argmax},
               {"enumeration-bruteforce", invariant_enumeration},
               {"greedy-bruteforce", invariant_greedy},
               {"mlp-gradients", invariant_gradients},
               {"lhs-stratification", invariant_lhs}};
    std::string detail;
    for (const auto& [name, check] : checks) {
      if (!check(why)) {
        return std::make_pair(false, name + ": " + why);
      }
      detail += name + " ";
    }
    return std::make_pair(true, "all checks: " + detail);
  });

  criterion("criterion 7: byte-identical reports for a fixed master seed", [&] {
    auto problem = quartic_problem(0.0, 1.0);
    problem.engine.n_max = 15;  // small but real configuration
    const std::string config = "{\"runs\":5}";
    const auto a = run_benchmark(problem, {Strategy::Ideal, Strategy::Random}, 5,
                                 kMasterSeed, kWorkers, "c7", config);
    const auto b = run_benchmark(problem, {Strategy::Ideal, Strategy::Random}, 5,
                                 kMasterSeed, kWorkers, "c7", config);
    for (std::size_t s = 0; s < a.strategies.size(); ++s) {
      if (report_to_json(a, a.strategies[s]) != report_to_json(b, b.strategies[s])) {
        return std::make_pair(false, a.strategies[s].label + " reports differ");
      }
    }
    return std::make_pair(true, std::string("two executions, identical serialized reports"));
  });

  criterion("criterion 8: external oracle loopback", [&] {
    ExternalOracle oracle(std::string(ECHO_ORACLE_PATH) + " echo", 10000);
    Rng rng(113);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + rng.uniform_int(8);
      FeatureVector x(n);
      for (int d = 0; d < n; ++d) x[d] = rng.normal(0.0, 50.0);
      const QueryResult r = oracle.query(x);
      if (!r.feasible() || r.target->size() != n) {
        return std::make_pair(false, std::string("bad response shape"));
      }
      for (int d = 0; d < n; ++d) {
        if ((*r.target)[d] != x[d]) {
          return std::make_pair(false, std::string("round trip not exact"));
        }
      }
    }
    return std::make_pair(true, std::string("100 queries round-tripped exactly"));
  });

  criterion("bundled dataset: iris-format ingestion end to end", [&] {
    DatasetSchema schema;
    schema.target_columns = {"species"};
    schema.task = TargetKind::Classification;
    const auto data = std::make_shared<Dataset>(
        load_csv(std::string(IDEAL_DATA_DIR) + "/iris.csv", schema));
    if (data->feature_dim != 4 || data->target_dim != 3) {
      return std::make_pair(false, std::string("expected n=4, m=3 after encoding"));
    }
    BenchmarkProblem problem;
    problem.make_spec = [data](Rng&) {
      return ProblemSpec::pool_problem(data->features, data->target_dim,
                                       data->target_kind);
    };
    problem.make_oracle = [data](Rng&) {
      return std::make_unique<DatasetOracle>(data->features, data->targets);
    };
    problem.make_eval = [data](const ProblemSpec&) {
      EvalSet eval;
      eval.kind = TargetKind::Classification;
      eval.descriptor = "full-pool";
      eval.xs = data->features;
      eval.truth = data->targets;
      return eval;
    };
    problem.predictor.hidden_layers = {10, 10, 10};
    problem.predictor.output = MlpConfig::OutputLayer::Logistic;
    problem.predictor.warm_start = true;
    problem.engine.n_init = 10;
    problem.engine.n_max = 40;
    problem.acquisition.delta = 5.0;
    const auto report = run_benchmark(problem, {Strategy::Ideal}, 20,
                                      kMasterSeed, kWorkers, "iris", "{}");
    const auto& ideal = strategy_of(report, "ideal");
    bool monotone = true;
    for (std::size_t i = 1; i < ideal.median_curve.size(); ++i) {
      if (ideal.median_curve[i].value < ideal.median_curve[i - 1].value - 0.03) {
        monotone = false;
      }
    }
    const bool improving = ideal.median_final > ideal.median_initial;
    return std::make_pair(monotone && improving,
                          "median accuracy " + fmt(ideal.median_initial) +
                              " -> " + fmt(ideal.median_final) +
                              (monotone ? ", curve monotone within 0.03"
                                        : ", curve NOT monotone"));
  });

  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "OK" : "FAILED",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
