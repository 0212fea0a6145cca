#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shardwright::npm {

struct TaskSpec {
  std::string name;
  std::string task_type;
  std::string preferred_metric_name;
  double random_score = 0.0;
  double max_score = 100.0;
  bool translated = false;
  std::size_t num_few_shot = 0;
};

struct TaskResult {
  TaskSpec task;
  double preferred_value = 0.0;
};

struct NpmReport {
  double npm = 0.0;
  std::vector<std::pair<std::string, double>> per_task_normalized;
  std::size_t task_count() const { return per_task_normalized.size(); }

  std::string to_json() const;
  std::string format_table() const;
};

/// The 14 Poeta tasks with their random baselines; every max score is 100.
std::vector<TaskSpec> builtin_task_table();

/// JSON list of {name, preferred_metric, random_score, max_score?, type?,
/// translated?, num_few_shot?}. Throws when any max_score <= random_score.
std::vector<TaskSpec> load_task_table(const std::filesystem::path& path);
std::vector<TaskSpec> parse_task_table(std::string_view json);

/// Looks up a task by exact name; throws std::out_of_range if unknown.
const TaskSpec& find_task(const std::vector<TaskSpec>& table, std::string_view name);

/// 100 * (value - random) / (max - random). Below-random scores are negative.
double normalized_score(const TaskSpec& task, double preferred_value);

/// Mean of normalized scores. Throws on empty input or a repeated task.
NpmReport compute_npm(const std::vector<TaskResult>& results);

/// Reads a JSON list of {task, preferred_value} and resolves names against
/// `table`.
std::vector<TaskResult> load_results(const std::filesystem::path& path, const std::vector<TaskSpec>& table);
std::vector<TaskResult> parse_results(std::string_view json, const std::vector<TaskSpec>& table);

}  // namespace shardwright::npm
