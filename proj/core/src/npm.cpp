#include "shardwright/npm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace shardwright::npm {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_task(const TaskSpec& t) {
  if (t.name.empty()) throw std::invalid_argument("task with empty name");
  if (!std::isfinite(t.random_score) || !std::isfinite(t.max_score)) {
    throw std::invalid_argument("task " + t.name + ": non-finite scores");
  }
  if (!(t.max_score > t.random_score)) {
    throw std::invalid_argument("task " + t.name + ": max_score must exceed random_score");
  }
}

}  // namespace

std::vector<TaskSpec> builtin_task_table() {
  // name, type, preferred metric, random score, translated, few-shot
  return {
      {"AG News", "Multiclass classification (4)", "Accuracy", 25.0, 100.0, true, 12},
      {"ASSIN 2 RTE", "Binary classification", "F1", 50.0, 100.0, false, 18},
      {"ASSIN 2 STS", "Regression", "Pearson", 0.0, 100.0, false, 15},
      {"BLUEX", "Multiple choice (4)", "Accuracy", 25.0, 100.0, false, 1},
      {"BoolQ", "Binary classification", "Accuracy", 50.0, 100.0, true, 4},
      {"ENEM Challenge", "Multiple choice (5)", "Accuracy", 20.0, 100.0, false, 1},
      {"ENEM 2022", "Multiple choice (5)", "Accuracy", 20.0, 100.0, false, 1},
      {"FaQuAD", "Extractive QA", "F1", 0.0, 100.0, false, 4},
      {"IMDB", "Binary classification", "Accuracy", 50.0, 100.0, true, 2},
      {"MASSIVE", "Multiclass classification (18)", "F1-macro", 0.58, 100.0, true, 36},
      {"MKQA", "Extractive QA", "F1", 0.0, 100.0, true, 40},
      {"SST2", "Binary classification", "Accuracy", 50.0, 100.0, true, 34},
      {"TweetSentBR", "Multiclass classification (3)", "F1-macro", 32.4, 100.0, false, 30},
      {"WSC", "Binary classification", "Accuracy", 50.0, 100.0, true, 18},
  };
}

std::vector<TaskSpec> parse_task_table(std::string_view json) {
  const auto j = nlohmann::json::parse(json);
  if (!j.is_array()) throw std::invalid_argument("task table must be a JSON list");
  std::vector<TaskSpec> out;
  std::set<std::string> seen;
  for (const auto& row : j) {
    TaskSpec t;
    t.name = row.at("name").get<std::string>();
    t.preferred_metric_name = row.value("preferred_metric", std::string());
    t.task_type = row.value("type", std::string());
    t.random_score = row.at("random_score").get<double>();
    t.max_score = row.value("max_score", 100.0);
    t.translated = row.value("translated", false);
    t.num_few_shot = row.value("num_few_shot", std::size_t{0});
    check_task(t);
    if (!seen.insert(t.name).second) throw std::invalid_argument("duplicate task " + t.name);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<TaskSpec> load_task_table(const std::filesystem::path& path) { return parse_task_table(slurp(path)); }

const TaskSpec& find_task(const std::vector<TaskSpec>& table, std::string_view name) {
  const auto it = std::find_if(table.begin(), table.end(), [&](const TaskSpec& t) { return t.name == name; });
  if (it == table.end()) throw std::out_of_range("unknown task: " + std::string(name));
  return *it;
}

double normalized_score(const TaskSpec& task, double preferred_value) {
  return 100.0 * (preferred_value - task.random_score) / (task.max_score - task.random_score);
}

NpmReport compute_npm(const std::vector<TaskResult>& results) {
  if (results.empty()) throw std::invalid_argument("npm: no task results");
  std::set<std::string> seen;
  NpmReport report;
  double sum = 0.0;
  for (const auto& r : results) {
    check_task(r.task);
    if (!std::isfinite(r.preferred_value)) throw std::invalid_argument("npm: non-finite value for " + r.task.name);
    if (!seen.insert(r.task.name).second) throw std::invalid_argument("npm: duplicate task " + r.task.name);
    const double v = normalized_score(r.task, r.preferred_value);
    report.per_task_normalized.emplace_back(r.task.name, v);
    sum += v;
  }
  report.npm = sum / static_cast<double>(results.size());
  return report;
}

std::vector<TaskResult> parse_results(std::string_view json, const std::vector<TaskSpec>& table) {
  const auto j = nlohmann::json::parse(json);
  if (!j.is_array()) throw std::invalid_argument("results must be a JSON list");
  std::vector<TaskResult> out;
  for (const auto& row : j) {
    out.push_back({find_task(table, row.at("task").get<std::string>()), row.at("preferred_value").get<double>()});
  }
  return out;
}

std::vector<TaskResult> load_results(const std::filesystem::path& path, const std::vector<TaskSpec>& table) {
  return parse_results(slurp(path), table);
}

std::string NpmReport::to_json() const {
  nlohmann::json j;
  j["npm"] = npm;
  j["tasks"] = task_count();
  auto& per = j["per_task_normalized"] = nlohmann::json::array();
  for (const auto& [name, v] : per_task_normalized) per.push_back({{"task", name}, {"normalized", v}});
  return j.dump(2);
}

std::string NpmReport::format_table() const {
  std::size_t w = 4;
  for (const auto& [name, _] : per_task_normalized) w = std::max(w, name.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(w)) << "Task" << "  " << std::right << std::setw(10) << "Normalized"
     << '\n';
  os << std::fixed << std::setprecision(2);
  for (const auto& [name, v] : per_task_normalized) {
    os << std::left << std::setw(static_cast<int>(w)) << name << "  " << std::right << std::setw(10) << v << '\n';
  }
  os << std::left << std::setw(static_cast<int>(w)) << "NPM" << "  " << std::right << std::setw(10) << npm << '\n';
  return os.str();
}

}  // namespace shardwright::npm
