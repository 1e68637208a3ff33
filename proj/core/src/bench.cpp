#include "ideal/bench.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ideal/metrics.hpp"

namespace ideal {

const char* strategy_label(Strategy s) {
  switch (s) {
    case Strategy::Ideal: return "ideal";
    case Strategy::Greedy: return "greedy";
    case Strategy::Random: return "random";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& label) {
  if (label == "ideal") return Strategy::Ideal;
  if (label == "greedy") return Strategy::Greedy;
  if (label == "random") return Strategy::Random;
  throw std::invalid_argument("unknown strategy '" + label + "'");
}

namespace {

// Seed streams per run: 0 engine, 1 oracle, 2 problem generation. All derive
// from (master, run) only, so every strategy sees the same problem and
// initial design for a given run index.
constexpr std::uint64_t kStreamEngine = 0;
constexpr std::uint64_t kStreamOracle = 1;
constexpr std::uint64_t kStreamSpec = 2;

RunCurve execute_run(const BenchmarkProblem& problem, Strategy strategy,
                     std::uint64_t master_seed, int run_index) {
  Rng spec_rng(derive_seed(master_seed, static_cast<std::uint64_t>(run_index),
                           kStreamSpec));
  const ProblemSpec spec = problem.make_spec(spec_rng);
  Rng oracle_rng(derive_seed(master_seed, static_cast<std::uint64_t>(run_index),
                             kStreamOracle));
  const auto oracle = problem.make_oracle(oracle_rng);
  const EvalSet eval = problem.make_eval(spec);

  const MetricFn metric = [&eval](const Predictor& predictor,
                                  const LearnerState& state) {
    std::vector<TargetVector> pred;
    if (!eval.xs.empty()) {
      pred.reserve(eval.xs.size());
      for (const auto& x : eval.xs) pred.push_back(predictor.predict(x));
      return eval.kind == TargetKind::Regression ? rmse(eval.truth, pred)
                                                 : accuracy(eval.truth, pred);
    }
    // No ground truth available: evaluate on the queried feasible samples.
    std::vector<TargetVector> truth;
    for (int idx : state.feasible_indices) {
      truth.push_back(*state.samples[idx].result.target);
      pred.push_back(predictor.predict(state.samples[idx].x));
    }
    return eval.kind == TargetKind::Regression ? rmse(truth, pred)
                                               : accuracy(truth, pred);
  };

  EngineConfig engine_cfg = problem.engine;
  engine_cfg.strategy = strategy;
  const std::uint64_t engine_seed =
      derive_seed(master_seed, static_cast<std::uint64_t>(run_index), kStreamEngine);
  Rng engine_rng(engine_seed);

  RunCurve out;
  out.seed = engine_seed;
  const RunResult result = run(engine_cfg, problem.acquisition, problem.predictor,
                               spec, *oracle, engine_rng, metric);
  out.init_failure = !result.init_success;
  out.curve = result.trace.metric_curve;
  out.n_init_total = result.trace.n_init_total;
  for (const auto& rec : result.trace.records) {
    if (rec.query_index <= result.trace.n_init_total) continue;
    ++out.post_init_queries;
    if (!rec.feasible) ++out.post_init_infeasible;
  }
  return out;
}

void aggregate(StrategyReport& report) {
  std::map<int, std::vector<double>> by_count;
  std::vector<double> initials, finals;
  for (const auto& run : report.runs) {
    if (run.init_failure) {
      ++report.init_failures;
      continue;
    }
    for (const auto& point : run.curve) by_count[point.queries].push_back(point.value);
    if (!run.curve.empty()) {
      initials.push_back(run.curve.front().value);
      finals.push_back(run.curve.back().value);
    }
  }
  for (auto& [queries, values] : by_count) {
    report.median_curve.push_back({queries, median(values)});
  }
  if (!initials.empty()) {
    report.median_initial = median(initials);
    report.median_final = median(finals);
  }
}

}  // namespace

ExperimentReport run_benchmark(const BenchmarkProblem& problem,
                               const std::vector<Strategy>& strategies, int runs,
                               std::uint64_t master_seed, int workers,
                               const std::string& experiment_name,
                               const std::string& config_json) {
  if (runs < 1) throw std::invalid_argument("run_benchmark: runs must be >= 1");
  if (strategies.empty()) {
    throw std::invalid_argument("run_benchmark: no strategies requested");
  }

  ExperimentReport report;
  report.experiment = experiment_name;
  report.config_json = config_json;
  report.runs = runs;
  report.master_seed = master_seed;

  {
    // Metric bookkeeping from a representative problem instance (run 0 streams).
    Rng probe(derive_seed(master_seed, 0, kStreamSpec));
    const EvalSet eval = problem.make_eval(problem.make_spec(probe));
    report.metric_name =
        eval.kind == TargetKind::Regression ? "rmse" : "accuracy";
    report.eval_descriptor = eval.descriptor;
  }

  struct Job {
    int strategy_index;
    int run_index;
  };
  std::vector<Job> jobs;
  jobs.reserve(strategies.size() * static_cast<std::size_t>(runs));
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    for (int r = 0; r < runs; ++r) jobs.push_back({static_cast<int>(s), r});
  }

  std::vector<StrategyReport> partial(strategies.size());
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    partial[s].label = strategy_label(strategies[s]);
    partial[s].runs.resize(static_cast<std::size_t>(runs));
  }

  std::atomic<std::size_t> next{0};
  const int thread_count = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(thread_count));
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < thread_count; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t j = next.fetch_add(1);
        if (j >= jobs.size() || failed.load()) break;
        const Job job = jobs[j];
        try {
          partial[job.strategy_index].runs[job.run_index] = execute_run(
              problem, strategies[job.strategy_index], master_seed, job.run_index);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          failed.store(true);
          break;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (auto& strategy_report : partial) aggregate(strategy_report);
  report.strategies = std::move(partial);
  return report;
}

namespace {

nlohmann::json curve_to_json(const std::vector<MetricPoint>& curve) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : curve) {
    arr.push_back({{"queries", p.queries}, {"value", p.value}});
  }
  return arr;
}

}  // namespace

std::string report_to_json(const ExperimentReport& report,
                           const StrategyReport& strategy) {
  nlohmann::json doc;
  doc["experiment"] = report.experiment;
  doc["metric"] = report.metric_name;
  doc["evaluation"] = report.eval_descriptor;
  doc["master_seed"] = report.master_seed;
  doc["runs"] = report.runs;
  doc["config"] = report.config_json.empty()
                      ? nlohmann::json::object()
                      : nlohmann::json::parse(report.config_json);
  nlohmann::json s;
  s["label"] = strategy.label;
  s["init_failures"] = strategy.init_failures;
  s["median_initial"] = strategy.median_initial;
  s["median_final"] = strategy.median_final;
  s["median_curve"] = curve_to_json(strategy.median_curve);
  nlohmann::json runs_json = nlohmann::json::array();
  for (const auto& run : strategy.runs) {
    nlohmann::json r;
    r["seed"] = run.seed;
    r["init_failure"] = run.init_failure;
    r["n_init_total"] = run.n_init_total;
    r["post_init_queries"] = run.post_init_queries;
    r["post_init_infeasible"] = run.post_init_infeasible;
    r["curve"] = curve_to_json(run.curve);
    runs_json.push_back(std::move(r));
  }
  s["runs"] = std::move(runs_json);
  doc["strategy"] = std::move(s);
  return doc.dump(2) + "\n";
}

void write_report_files(const ExperimentReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& strategy : report.strategies) {
    {
      std::ofstream out(std::filesystem::path(dir) /
                        ("report_" + strategy.label + ".json"));
      out << report_to_json(report, strategy);
    }
    {
      std::ofstream out(std::filesystem::path(dir) /
                        ("curves_" + strategy.label + ".csv"));
      out << "run,queries," << report.metric_name << "\n";
      for (std::size_t r = 0; r < strategy.runs.size(); ++r) {
        for (const auto& p : strategy.runs[r].curve) {
          out << r << "," << p.queries << "," << p.value << "\n";
        }
      }
    }
    {
      std::ofstream out(std::filesystem::path(dir) /
                        ("median_" + strategy.label + ".csv"));
      out << "queries,median_" << report.metric_name << "\n";
      for (const auto& p : strategy.median_curve) {
        out << p.queries << "," << p.value << "\n";
      }
    }
  }
}

std::vector<ReportSummary> load_report_summaries(const std::string& dir) {
  std::vector<ReportSummary> out;
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("report: not a directory: " + dir);
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("report_", 0) == 0 && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path);
    nlohmann::json doc;
    in >> doc;
    ReportSummary row;
    row.experiment = doc.value("experiment", "");
    row.metric_name = doc.value("metric", "");
    row.runs = doc.value("runs", 0);
    const auto& s = doc.at("strategy");
    row.strategy = s.value("label", "");
    row.init_failures = s.value("init_failures", 0);
    row.median_initial = s.value("median_initial", 0.0);
    row.median_final = s.value("median_final", 0.0);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace ideal
