// Benchmark CLI: pool- and population-based active-learning experiments with
// the ideal/greedy/random strategies, reproducible seeded runs, and JSON/CSV
// reports.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ideal/bench.hpp"
#include "ideal/data.hpp"
#include "ideal/engine.hpp"

namespace {

using nlohmann::json;
using namespace ideal;

struct Options {
  std::string problem = "quartic-sine";
  std::string csv_path;
  std::string schema_path;
  std::string task = "";  // dataset/external task override
  std::string command;    // external oracle command line
  std::string bounds_path;
  std::string mode = "population";
  std::string strategy = "ideal";
  double delta = 1.0;
  double omega = 0.0;
  int n_init = 10;
  int n_max = 100;
  int batch = 1;
  int runs = 1;
  std::uint64_t seed = 0;
  double noise = 0.0;
  int pool_size = 1000;
  int workers = 0;  // 0: hardware concurrency
  std::string hidden;  // e.g. "5,5"; empty keeps the per-problem preset
  int warm_start = -1;  // -1 preset, 0 off, 1 on
  int epochs = 0;       // 0 keeps the preset
  double lr = 0.0;      // 0 keeps the preset
  std::string out = "ideal-out";
  std::string report_dir;
  int timeout_ms = 30000;
  std::string config_path;
};

// Config file mirrors every flag by long name; explicitly passed flags win.
void apply_config_file(CLI::App& cmd, Options& o) {
  std::ifstream in(o.config_path);
  if (!in) throw std::invalid_argument("cannot open config " + o.config_path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }

  const auto given = [&cmd](const std::string& key) {
    CLI::Option* opt = cmd.get_option_no_throw("--" + key);
    return opt != nullptr && opt->count() > 0;
  };

  for (const auto& [key, value] : doc.items()) {
    if (given(key)) continue;  // explicit flag overrides the file
    if (key == "problem") o.problem = value.get<std::string>();
    else if (key == "csv") o.csv_path = value.get<std::string>();
    else if (key == "schema") o.schema_path = value.get<std::string>();
    else if (key == "task") o.task = value.get<std::string>();
    else if (key == "cmd") o.command = value.get<std::string>();
    else if (key == "bounds") o.bounds_path = value.get<std::string>();
    else if (key == "mode") o.mode = value.get<std::string>();
    else if (key == "strategy") o.strategy = value.get<std::string>();
    else if (key == "delta") o.delta = value.get<double>();
    else if (key == "omega") o.omega = value.get<double>();
    else if (key == "n-init") o.n_init = value.get<int>();
    else if (key == "n-max") o.n_max = value.get<int>();
    else if (key == "batch") o.batch = value.get<int>();
    else if (key == "runs") o.runs = value.get<int>();
    else if (key == "seed") o.seed = value.get<std::uint64_t>();
    else if (key == "noise") o.noise = value.get<double>();
    else if (key == "pool-size") o.pool_size = value.get<int>();
    else if (key == "workers") o.workers = value.get<int>();
    else if (key == "hidden") o.hidden = value.is_string() ? value.get<std::string>() : value.dump();
    else if (key == "warm-start") o.warm_start = value.is_boolean() ? (value.get<bool>() ? 1 : 0) : value.get<int>();
    else if (key == "epochs") o.epochs = value.get<int>();
    else if (key == "lr") o.lr = value.get<double>();
    else if (key == "out") o.out = value.get<std::string>();
    else if (key == "timeout-ms") o.timeout_ms = value.get<int>();
    else throw std::invalid_argument("config: unknown option '" + key + "'");
  }
}

std::vector<Strategy> parse_strategies(const std::string& text) {
  if (text == "all") return {Strategy::Ideal, Strategy::Greedy, Strategy::Random};
  std::vector<Strategy> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_strategy(token));
  if (out.empty()) throw std::invalid_argument("no strategy given");
  return out;
}

std::vector<int> parse_hidden(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(std::stoi(token));
  return out;
}

json echo_config(const std::string& subcommand, const Options& o) {
  json doc;
  doc["subcommand"] = subcommand;
  doc["strategy"] = o.strategy;
  doc["delta"] = o.delta;
  doc["omega"] = o.omega;
  doc["n-init"] = o.n_init;
  doc["n-max"] = o.n_max;
  doc["batch"] = o.batch;
  doc["runs"] = o.runs;
  doc["seed"] = o.seed;
  doc["noise"] = o.noise;
  doc["out"] = o.out;
  if (subcommand == "synth") {
    doc["problem"] = o.problem;
    doc["pool-size"] = o.pool_size;
  } else if (subcommand == "dataset") {
    doc["csv"] = o.csv_path;
    doc["schema"] = o.schema_path;
    doc["task"] = o.task;
  } else if (subcommand == "external") {
    doc["cmd"] = o.command;
    doc["bounds"] = o.bounds_path;
    doc["mode"] = o.mode;
  }
  if (!o.hidden.empty()) doc["hidden"] = o.hidden;
  if (o.warm_start >= 0) doc["warm-start"] = o.warm_start == 1;
  if (o.epochs > 0) doc["epochs"] = o.epochs;
  if (o.lr > 0) doc["lr"] = o.lr;
  return doc;
}

void apply_predictor_overrides(const Options& o, MlpConfig& cfg) {
  if (!o.hidden.empty()) cfg.hidden_layers = parse_hidden(o.hidden);
  if (o.warm_start >= 0) cfg.warm_start = o.warm_start == 1;
  if (o.epochs > 0) cfg.max_epochs = o.epochs;
  if (o.lr > 0) cfg.learning_rate = o.lr;
}

void fill_engine(const Options& o, BenchmarkProblem& problem) {
  problem.engine.n_init = o.n_init;
  problem.engine.n_max = o.n_max;
  problem.engine.batch_period = o.batch;
  problem.acquisition.delta = o.delta;
  problem.acquisition.omega = o.omega;
}

BenchmarkProblem synth_problem(const Options& o) {
  BenchmarkProblem problem;
  if (o.problem == "quartic-sine") {
    const int m = o.pool_size;
    const double noise = o.noise;
    problem.make_spec = [m](Rng&) {
      std::vector<FeatureVector> pool;
      pool.reserve(m);
      for (int i = 0; i < m; ++i) {
        FeatureVector x(1);
        x[0] = -3.0 + 6.0 * i / (m - 1.0);
        pool.push_back(std::move(x));
      }
      return ProblemSpec::pool_problem(std::move(pool), 1, TargetKind::Regression);
    };
    problem.make_oracle = [noise](Rng& rng) {
      return std::make_unique<QuarticSineOracle>(noise, rng.next_u64());
    };
    problem.make_eval = [](const ProblemSpec& spec) {
      EvalSet eval;
      eval.kind = TargetKind::Regression;
      eval.descriptor = "grid-" + std::to_string(spec.pool.size());
      Rng noiseless(0);
      for (const auto& x : spec.pool) {
        eval.xs.push_back(x);
        TargetVector y(1);
        y[0] = quartic_sine(x[0], 0.0, noiseless);
        eval.truth.push_back(std::move(y));
      }
      return eval;
    };
    problem.predictor.hidden_layers = {5, 5};
    problem.predictor.warm_start = false;
    // The reference trainer reaches near-interpolation at its alpha; the
    // built-in full-batch trainer needs a weaker penalty for the same regime.
    problem.predictor.l2_penalty = 1e-4;
  } else if (o.problem == "circle" || o.problem == "circle-constrained") {
    const bool constrained = o.problem == "circle-constrained";
    const int m = o.pool_size;
    problem.make_spec = [m](Rng& rng) {
      std::vector<FeatureVector> pool;
      pool.reserve(m);
      for (int i = 0; i < m; ++i) {
        FeatureVector x(2);
        x[0] = rng.uniform(-2.0, 2.0);
        x[1] = rng.uniform(-2.0, 2.0);
        pool.push_back(std::move(x));
      }
      return ProblemSpec::pool_problem(std::move(pool), 1,
                                       TargetKind::Classification);
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
        if (!r.feasible()) continue;  // accuracy on feasible vectors only
        eval.xs.push_back(x);
        eval.truth.push_back(*r.target);
      }
      return eval;
    };
    problem.predictor.hidden_layers = {10, 10};
    problem.predictor.output = MlpConfig::OutputLayer::Logistic;
    problem.predictor.warm_start = true;
  } else {
    throw std::invalid_argument("unknown problem '" + o.problem + "'");
  }
  fill_engine(o, problem);
  apply_predictor_overrides(o, problem.predictor);
  return problem;
}

BenchmarkProblem dataset_problem(const Options& o) {
  if (o.csv_path.empty()) throw std::invalid_argument("dataset: --csv is required");
  if (o.schema_path.empty()) throw std::invalid_argument("dataset: --schema is required");
  DatasetSchema schema = DatasetSchema::from_json_file(o.schema_path);
  if (o.task == "regression") {
    schema.task = TargetKind::Regression;
  } else if (o.task == "classification") {
    schema.task = TargetKind::Classification;
  } else if (!o.task.empty()) {
    throw std::invalid_argument("unknown task '" + o.task + "'");
  }
  const auto data = std::make_shared<Dataset>(load_csv(o.csv_path, schema));

  BenchmarkProblem problem;
  problem.make_spec = [data](Rng&) {
    return ProblemSpec::pool_problem(data->features, data->target_dim,
                                     data->target_kind);
  };
  problem.make_oracle = [data](Rng&) {
    // Pool deduplication may drop rows; align labels by looking up features.
    return std::make_unique<DatasetOracle>(data->features, data->targets);
  };
  problem.make_eval = [data](const ProblemSpec&) {
    EvalSet eval;
    eval.kind = data->target_kind;
    eval.descriptor = "full-pool";
    eval.xs = data->features;
    eval.truth = data->targets;
    return eval;
  };
  if (data->target_kind == TargetKind::Classification) {
    problem.predictor.hidden_layers = {10, 10, 10};
    problem.predictor.output = MlpConfig::OutputLayer::Logistic;
  } else {
    problem.predictor.hidden_layers = {5, 5};
  }
  problem.predictor.warm_start = true;
  fill_engine(o, problem);
  apply_predictor_overrides(o, problem.predictor);
  return problem;
}

BenchmarkProblem external_problem(const Options& o) {
  if (o.command.empty()) throw std::invalid_argument("external: --cmd is required");
  if (o.bounds_path.empty()) throw std::invalid_argument("external: --bounds is required");
  if (o.mode != "population") {
    throw std::invalid_argument("external oracle supports --mode population");
  }
  std::ifstream in(o.bounds_path);
  if (!in) throw std::invalid_argument("cannot open bounds file " + o.bounds_path);
  json doc;
  in >> doc;
  const auto lo = doc.at("x_min").get<std::vector<double>>();
  const auto hi = doc.at("x_max").get<std::vector<double>>();
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("bounds file: x_min/x_max size mismatch");
  }
  const int m = doc.value("m", 1);
  const std::string task = !o.task.empty() ? o.task : doc.value("task", "regression");

  Bounds bounds;
  bounds.x_min = Eigen::Map<const Eigen::VectorXd>(lo.data(), static_cast<Eigen::Index>(lo.size()));
  bounds.x_max = Eigen::Map<const Eigen::VectorXd>(hi.data(), static_cast<Eigen::Index>(hi.size()));
  const TargetKind kind =
      task == "classification" ? TargetKind::Classification : TargetKind::Regression;

  BenchmarkProblem problem;
  problem.make_spec = [bounds, m, kind](Rng&) {
    return ProblemSpec::population_problem(bounds, m, kind);
  };
  const std::string command = o.command;
  const int timeout = o.timeout_ms;
  problem.make_oracle = [command, timeout](Rng&) {
    return std::make_unique<ExternalOracle>(command, timeout);
  };
  problem.make_eval = [kind](const ProblemSpec&) {
    EvalSet eval;
    eval.kind = kind;
    eval.descriptor = "queried-feasible";
    return eval;  // no ground truth: evaluate on queried samples
  };
  problem.predictor.hidden_layers = {5, 5};
  if (kind == TargetKind::Classification) {
    problem.predictor.output = MlpConfig::OutputLayer::Logistic;
  }
  fill_engine(o, problem);
  apply_predictor_overrides(o, problem.predictor);
  return problem;
}

int run_experiment(const std::string& name, const Options& o,
                   const BenchmarkProblem& problem) {
  const auto strategies = parse_strategies(o.strategy);
  const int workers = o.workers > 0
                          ? o.workers
                          : std::max(1u, std::thread::hardware_concurrency());
  const ExperimentReport report =
      run_benchmark(problem, strategies, o.runs, o.seed, workers, name,
                    echo_config(name, o).dump());
  write_report_files(report, o.out);

  int successful_runs = 0;
  std::cout << "experiment: " << name << "  metric: " << report.metric_name
            << "  evaluation: " << report.eval_descriptor << "\n";
  for (const auto& s : report.strategies) {
    successful_runs += static_cast<int>(s.runs.size()) - s.init_failures;
    std::cout << "  " << s.label << ": runs=" << s.runs.size()
              << " init_failures=" << s.init_failures
              << " median_initial=" << s.median_initial
              << " median_final=" << s.median_final << "\n";
  }
  std::cout << "reports written to " << o.out << "\n";
  return successful_runs == 0 ? 3 : 0;
}

int run_report(const Options& o) {
  const auto summaries = load_report_summaries(o.report_dir);
  if (summaries.empty()) {
    std::cout << "no report_*.json files in " << o.report_dir << "\n";
    return 0;
  }
  std::cout << "experiment\tstrategy\tmetric\truns\tinit_failures\tmedian_final\n";
  for (const auto& row : summaries) {
    std::cout << row.experiment << "\t" << row.strategy << "\t"
              << row.metric_name << "\t" << row.runs << "\t"
              << row.init_failures << "\t" << row.median_final << "\n";
  }
  return 0;
}

void add_common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--strategy", o.strategy,
                  "ideal|greedy|random, a comma list, or 'all'");
  cmd->add_option("--delta", o.delta, "exploration weight");
  cmd->add_option("--omega", o.omega, "density weight (pool mode)");
  cmd->add_option("--n-init", o.n_init, "feasible samples to collect at init");
  cmd->add_option("--n-max", o.n_max, "total query budget");
  cmd->add_option("--batch", o.batch, "retrain after this many feasible queries");
  cmd->add_option("--runs", o.runs, "independent seeded runs");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--noise", o.noise, "oracle noise standard deviation");
  cmd->add_option("--out", o.out, "output directory for reports");
  cmd->add_option("--workers", o.workers, "parallel run workers (0 = auto)");
  cmd->add_option("--hidden", o.hidden, "hidden layer widths, e.g. 10,10");
  cmd->add_option("--warm-start", o.warm_start, "0|1 predictor warm start");
  cmd->add_option("--epochs", o.epochs, "max training epochs per fit");
  cmd->add_option("--lr", o.lr, "trainer learning rate");
  cmd->add_option("--config", o.config_path,
                  "JSON file mirroring the flags; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"active-learning benchmark engine"};
  app.require_subcommand(1);
  Options o;

  CLI::App* synth = app.add_subcommand(
      "synth", "synthetic problems: quartic-sine, circle, circle-constrained");
  synth->add_option("--problem", o.problem,
                    "quartic-sine|circle|circle-constrained");
  synth->add_option("--pool-size", o.pool_size, "candidate pool size");
  add_common_flags(synth, o);

  CLI::App* dataset = app.add_subcommand("dataset", "pool-based run on a CSV");
  dataset->add_option("--csv", o.csv_path, "CSV file with a header row");
  dataset->add_option("--schema", o.schema_path, "JSON schema: target/categorical");
  dataset->add_option("--task", o.task, "regression|classification");
  add_common_flags(dataset, o);

  CLI::App* external = app.add_subcommand(
      "external", "population-based run against a child-process oracle");
  external->add_option("--cmd", o.command, "oracle command line");
  external->add_option("--bounds", o.bounds_path,
                       "JSON file: x_min, x_max, m, task");
  external->add_option("--mode", o.mode, "sampling mode (population)");
  external->add_option("--timeout-ms", o.timeout_ms, "per-query timeout");
  add_common_flags(external, o);

  CLI::App* report = app.add_subcommand("report", "summarize report directory");
  report->add_option("--in", o.report_dir, "directory with report_*.json")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    app.exit(e);
    return 2;
  }

  try {
    for (CLI::App* cmd : {synth, dataset, external}) {
      if (cmd->parsed() && !o.config_path.empty()) apply_config_file(*cmd, o);
    }
    if (synth->parsed()) {
      return run_experiment("synth-" + o.problem, o, synth_problem(o));
    }
    if (dataset->parsed()) {
      return run_experiment(
          "dataset-" + std::filesystem::path(o.csv_path).stem().string(), o,
          dataset_problem(o));
    }
    if (external->parsed()) {
      return run_experiment("external", o, external_problem(o));
    }
    if (report->parsed()) {
      return run_report(o);
    }
  } catch (const ProtocolError& e) {
    std::cerr << "oracle protocol error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
