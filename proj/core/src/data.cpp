#include "ideal/data.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace ideal {

double quartic_sine(double x, double noise_std, Rng& rng) {
  const double s = std::sin(x * x / 3.0);
  double y = x * x * x * x * s * s;
  if (noise_std > 0.0) y += rng.normal(0.0, noise_std);
  return y;
}

QueryResult circle_indicator(const FeatureVector& x, bool constrained) {
  if (x.size() != 2) {
    throw std::invalid_argument("circle_indicator: expected a 2-vector");
  }
  if (constrained && 3.0 * x[1] > std::sqrt(3.0) * std::abs(x[0])) {
    return QueryResult::infeasible();
  }
  TargetVector y(1);
  y[0] = x.squaredNorm() <= 1.0 ? 1.0 : 0.0;
  return QueryResult::labeled(std::move(y));
}

QueryResult QuarticSineOracle::query(const FeatureVector& x) {
  if (x.size() != 1) {
    throw std::invalid_argument("quartic_sine: expected a scalar feature");
  }
  TargetVector y(1);
  y[0] = quartic_sine(x[0], noise_std_, rng_);
  return QueryResult::labeled(std::move(y));
}

DatasetOracle::DatasetOracle(std::vector<FeatureVector> pool,
                             std::vector<TargetVector> labels)
    : pool_(std::move(pool)), labels_(std::move(labels)) {
  if (pool_.size() != labels_.size()) {
    throw std::invalid_argument("DatasetOracle: pool/label size mismatch");
  }
}

QueryResult DatasetOracle::query(const FeatureVector& x) {
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if (pool_[i].size() == x.size() && pool_[i] == x) {
      return QueryResult::labeled(labels_[i]);
    }
  }
  throw std::invalid_argument("DatasetOracle: query point not in pool");
}

namespace {

// Minimal RFC-4180 reader: quoted fields may contain separators, newlines,
// and doubled quotes.
std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (any && (!field.empty() || !row.empty())) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_number(const std::string& cell, std::size_t row, const std::string& col) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("load_csv: cannot parse '" + cell + "' at row " +
                             std::to_string(row) + ", column '" + col + "'");
  }
}

int category_index(std::vector<std::string>& dictionary, const std::string& value) {
  for (std::size_t i = 0; i < dictionary.size(); ++i) {
    if (dictionary[i] == value) return static_cast<int>(i);
  }
  dictionary.push_back(value);
  return static_cast<int>(dictionary.size()) - 1;
}

}  // namespace

DatasetSchema DatasetSchema::from_json_text(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  DatasetSchema schema;
  if (doc.contains("target")) {
    if (doc["target"].is_string()) {
      schema.target_columns.push_back(doc["target"].get<std::string>());
    } else {
      schema.target_columns = doc["target"].get<std::vector<std::string>>();
    }
  }
  if (doc.contains("categorical")) {
    schema.categorical_columns = doc["categorical"].get<std::vector<std::string>>();
  }
  if (doc.contains("task")) {
    const auto task = doc["task"].get<std::string>();
    if (task == "regression") {
      schema.task = TargetKind::Regression;
    } else if (task == "classification") {
      schema.task = TargetKind::Classification;
    } else {
      throw std::runtime_error("schema: unknown task '" + task + "'");
    }
  }
  return schema;
}

DatasetSchema DatasetSchema::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("schema: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

Dataset load_csv(const std::string& path, const DatasetSchema& schema) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path);
  const auto rows = parse_csv(in);
  if (rows.size() < 2) throw std::runtime_error("load_csv: need a header row and data");

  const auto& header = rows.front();
  const auto find_column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  for (const auto& name : schema.target_columns) {
    if (find_column(name) < 0) {
      throw std::runtime_error("load_csv: unknown target column '" + name + "'");
    }
  }
  for (const auto& name : schema.categorical_columns) {
    if (find_column(name) < 0) {
      throw std::runtime_error("load_csv: unknown categorical column '" + name + "'");
    }
  }
  if (schema.target_columns.empty()) {
    throw std::runtime_error("load_csv: schema declares no target column");
  }

  Dataset data;
  data.target_kind = schema.task;
  data.columns.resize(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    data.columns[c].name = header[c];
    const bool is_target =
        std::find(schema.target_columns.begin(), schema.target_columns.end(),
                  header[c]) != schema.target_columns.end();
    const bool is_cat =
        std::find(schema.categorical_columns.begin(),
                  schema.categorical_columns.end(),
                  header[c]) != schema.categorical_columns.end();
    if (is_target && is_cat) {
      throw std::runtime_error("load_csv: column '" + header[c] +
                               "' is both target and categorical");
    }
    data.columns[c].role = is_target ? ColumnRole::Target
                          : is_cat   ? ColumnRole::Categorical
                                     : ColumnRole::Numeric;
  }

  const std::size_t n_rows = rows.size() - 1;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      throw std::runtime_error("load_csv: row " + std::to_string(r) + " has " +
                               std::to_string(rows[r].size()) + " fields, expected " +
                               std::to_string(header.size()));
    }
  }

  // First pass: build category dictionaries in first-appearance order.
  for (std::size_t c = 0; c < header.size(); ++c) {
    auto& col = data.columns[c];
    const bool classification_target =
        col.role == ColumnRole::Target && schema.task == TargetKind::Classification;
    if (col.role != ColumnRole::Categorical && !classification_target) continue;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      category_index(col.categories, rows[r][c]);
    }
  }

  // Expanded feature layout.
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& col = data.columns[c];
    if (col.role == ColumnRole::Numeric) {
      data.feature_names.push_back(col.name);
    } else if (col.role == ColumnRole::Categorical) {
      for (const auto& cat : col.categories) {
        data.feature_names.push_back(col.name + "=" + cat);
      }
    }
  }
  data.feature_dim = static_cast<int>(data.feature_names.size());

  int target_dim = 0;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& col = data.columns[c];
    if (col.role != ColumnRole::Target) continue;
    if (schema.task == TargetKind::Regression) {
      target_dim += 1;
    } else {
      const int classes = static_cast<int>(col.categories.size());
      // Binary labels use a single 0/1 output; multiclass is one-hot.
      target_dim += classes <= 2 ? 1 : classes;
      for (const auto& cat : col.categories) data.target_labels.push_back(cat);
    }
  }
  data.target_dim = target_dim;

  data.features.reserve(n_rows);
  data.targets.reserve(n_rows);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    FeatureVector x(data.feature_dim);
    TargetVector y(data.target_dim);
    int xi = 0;
    int yi = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto& col = data.columns[c];
      const std::string& cell = rows[r][c];
      switch (col.role) {
        case ColumnRole::Numeric:
          x[xi++] = parse_number(cell, r, col.name);
          break;
        case ColumnRole::Categorical: {
          int idx = -1;
          for (std::size_t i = 0; i < col.categories.size(); ++i) {
            if (col.categories[i] == cell) idx = static_cast<int>(i);
          }
          for (std::size_t i = 0; i < col.categories.size(); ++i) {
            x[xi++] = static_cast<int>(i) == idx ? 1.0 : 0.0;
          }
          break;
        }
        case ColumnRole::Target:
          if (schema.task == TargetKind::Regression) {
            y[yi++] = parse_number(cell, r, col.name);
          } else {
            int idx = -1;
            for (std::size_t i = 0; i < col.categories.size(); ++i) {
              if (col.categories[i] == cell) idx = static_cast<int>(i);
            }
            if (col.categories.size() <= 2) {
              y[yi++] = idx == 1 ? 1.0 : 0.0;
            } else {
              for (std::size_t i = 0; i < col.categories.size(); ++i) {
                y[yi++] = static_cast<int>(i) == idx ? 1.0 : 0.0;
              }
            }
          }
          break;
      }
    }
    data.features.push_back(std::move(x));
    data.targets.push_back(std::move(y));
  }
  return data;
}

std::string Dataset::decode_categorical(int row, const std::string& column) const {
  int offset = 0;
  for (const auto& col : columns) {
    if (col.role == ColumnRole::Target) continue;
    const int width = col.role == ColumnRole::Numeric
                          ? 1
                          : static_cast<int>(col.categories.size());
    if (col.name == column) {
      if (col.role != ColumnRole::Categorical) {
        throw std::invalid_argument("decode_categorical: '" + column +
                                    "' is not categorical");
      }
      const auto& x = features.at(static_cast<std::size_t>(row));
      for (int i = 0; i < width; ++i) {
        if (x[offset + i] == 1.0) return col.categories[static_cast<std::size_t>(i)];
      }
      throw std::runtime_error("decode_categorical: no active one-hot coordinate");
    }
    offset += width;
  }
  throw std::invalid_argument("decode_categorical: unknown column '" + column + "'");
}

ExternalOracle::ExternalOracle(const std::string& command, int timeout_ms)
    : timeout_ms_(timeout_ms) {
  int to_child[2];
  int from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0) {
    throw ProtocolError("external oracle: pipe() failed");
  }
  const pid_t pid = fork();
  if (pid < 0) throw ProtocolError("external oracle: fork() failed");
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);
  child_pid_ = pid;
  to_child_ = to_child[1];
  from_child_ = from_child[0];
}

ExternalOracle::~ExternalOracle() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (child_pid_ > 0) {
    kill(child_pid_, SIGTERM);
    int status = 0;
    waitpid(child_pid_, &status, 0);
  }
}

std::string ExternalOracle::read_line() {
  while (true) {
    const auto pos = buffer_.find('\n');
    if (pos != std::string::npos) {
      std::string line = buffer_.substr(0, pos);
      buffer_.erase(0, pos + 1);
      return line;
    }
    struct pollfd pfd {};
    pfd.fd = from_child_;
    pfd.events = POLLIN;
    const int ready = poll(&pfd, 1, timeout_ms_);
    if (ready == 0) {
      throw ProtocolError("external oracle: timeout waiting for response");
    }
    if (ready < 0) {
      throw ProtocolError("external oracle: poll() failed");
    }
    char chunk[4096];
    const ssize_t got = read(from_child_, chunk, sizeof(chunk));
    if (got <= 0) {
      throw ProtocolError("external oracle: child closed its output (partial: '" +
                          buffer_ + "')");
    }
    buffer_.append(chunk, static_cast<std::size_t>(got));
  }
}

QueryResult ExternalOracle::query(const FeatureVector& x) {
  nlohmann::json request;
  request["x"] = std::vector<double>(x.data(), x.data() + x.size());
  std::string line = request.dump();
  line.push_back('\n');
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = write(to_child_, line.data() + written, line.size() - written);
    if (n <= 0) throw ProtocolError("external oracle: cannot write request");
    written += static_cast<std::size_t>(n);
  }

  const std::string response = read_line();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(response);
  } catch (const std::exception&) {
    throw ProtocolError("external oracle: malformed response '" + response + "'");
  }
  if (doc.contains("infeasible") && doc["infeasible"].is_boolean() &&
      doc["infeasible"].get<bool>()) {
    return QueryResult::infeasible();
  }
  if (doc.contains("y") && doc["y"].is_array()) {
    const auto values = doc["y"].get<std::vector<double>>();
    TargetVector y = Eigen::Map<const Eigen::VectorXd>(
        values.data(), static_cast<Eigen::Index>(values.size()));
    return QueryResult::labeled(std::move(y));
  }
  throw ProtocolError("external oracle: response missing 'y' or 'infeasible': '" +
                      response + "'");
}

}  // namespace ideal
