#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ideal/engine.hpp"
#include "ideal/types.hpp"

namespace ideal {

// Fixed evaluation set for the per-retrain metric. An empty `xs` means
// "evaluate on the feasible samples queried so far" (used when no ground
// truth is available, e.g. external oracles).
struct EvalSet {
  std::vector<FeatureVector> xs;
  std::vector<TargetVector> truth;
  TargetKind kind = TargetKind::Regression;
  std::string descriptor;  // e.g. "grid-1000", "full-pool", "feasible-pool"
};

// Everything needed to execute one experiment. The problem definition, the oracle, and
// evaluation set are built per run so that randomized pools and noisy oracles
// draw from the run's own seeded streams.
struct BenchmarkProblem {
  std::function<ProblemSpec(Rng&)> make_spec;
  std::function<std::unique_ptr<Oracle>(Rng&)> make_oracle;
  std::function<EvalSet(const ProblemSpec&)> make_eval;
  MlpConfig predictor;
  EngineConfig engine;  // strategy is overridden per requested strategy
  AcquisitionConfig acquisition;
};

struct RunCurve {
  std::uint64_t seed = 0;
  bool init_failure = false;
  std::vector<MetricPoint> curve;
  int n_init_total = 0;
  int post_init_queries = 0;
  int post_init_infeasible = 0;
};

struct StrategyReport {
  std::string label;  // "ideal" | "greedy" | "random"
  std::vector<RunCurve> runs;
  std::vector<MetricPoint> median_curve;
  double median_initial = 0.0;  // median of first snapshots over successful runs
  double median_final = 0.0;    // median of last snapshots
  int init_failures = 0;
};

struct ExperimentReport {
  std::string experiment;
  std::string metric_name;  // "rmse" | "accuracy"
  std::string eval_descriptor;
  std::string config_json;  // echo of the resolved configuration
  int runs = 0;
  std::uint64_t master_seed = 0;
  std::vector<StrategyReport> strategies;
};

const char* strategy_label(Strategy s);
Strategy parse_strategy(const std::string& label);

// Executes `runs` independent engine runs per strategy with seeds derived
// from (master_seed, run index) — identical across strategies so comparisons
// are paired — evaluating the metric after every retrain. Runs execute on up
// to `workers` threads; aggregation is a deterministic serial pass in run
// order, so reports are byte-identical for a fixed seed and config.
ExperimentReport run_benchmark(const BenchmarkProblem& problem,
                               const std::vector<Strategy>& strategies, int runs,
                               std::uint64_t master_seed, int workers,
                               const std::string& experiment_name,
                               const std::string& config_json);

// Serialization. One JSON document plus flat CSV curve exports per strategy:
//   report_<strategy>.json, curves_<strategy>.csv, median_<strategy>.csv
std::string report_to_json(const ExperimentReport& report,
                           const StrategyReport& strategy);
void write_report_files(const ExperimentReport& report, const std::string& dir);

// Summary row used by the `report` CLI subcommand.
struct ReportSummary {
  std::string experiment;
  std::string strategy;
  std::string metric_name;
  int runs = 0;
  int init_failures = 0;
  double median_initial = 0.0;
  double median_final = 0.0;
};

std::vector<ReportSummary> load_report_summaries(const std::string& dir);

}  // namespace ideal
