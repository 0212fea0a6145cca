#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "shardwright/npm.hpp"

namespace npm = shardwright::npm;
namespace t = shardwright::testing;

namespace {

std::vector<npm::TaskResult> at(const std::vector<npm::TaskSpec>& table, double npm::TaskSpec::*field) {
  std::vector<npm::TaskResult> out;
  for (const auto& task : table) out.push_back({task, task.*field});
  return out;
}

npm::TaskSpec task(std::string name, double random, double max = 100.0) {
  npm::TaskSpec t;
  t.name = std::move(name);
  t.random_score = random;
  t.max_score = max;
  return t;
}

}  // namespace

TEST(TaskTable, BuiltinRows) {
  const auto table = npm::builtin_task_table();
  ASSERT_EQ(table.size(), 14u);
  EXPECT_DOUBLE_EQ(npm::find_task(table, "MASSIVE").random_score, 0.58);
  EXPECT_DOUBLE_EQ(npm::find_task(table, "TweetSentBR").random_score, 32.4);
  EXPECT_DOUBLE_EQ(npm::find_task(table, "AG News").random_score, 25.0);
  EXPECT_EQ(npm::find_task(table, "MKQA").num_few_shot, 40u);
  EXPECT_EQ(npm::find_task(table, "ASSIN 2 STS").preferred_metric_name, "Pearson");
  for (const auto& t : table) EXPECT_DOUBLE_EQ(t.max_score, 100.0);
  EXPECT_THROW(npm::find_task(table, "HellaSwag"), std::out_of_range);
}

TEST(TaskTable, RejectsMaxNotAboveRandom) {
  EXPECT_THROW(npm::parse_task_table(R"([{"name":"x","random_score":50,"max_score":50}])"), std::invalid_argument);
  EXPECT_THROW(npm::parse_task_table(R"([{"name":"x","random_score":0},{"name":"x","random_score":1}])"),
               std::invalid_argument);
  const auto t = npm::parse_task_table(R"([{"name":"x","preferred_metric":"F1","random_score":10,"max_score":20}])");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_DOUBLE_EQ(npm::normalized_score(t[0], 15), 50.0);
}

TEST(Npm, RandomBaselineIsZeroAndMaxIsHundred) {
  const auto table = npm::builtin_task_table();
  EXPECT_NEAR(npm::compute_npm(at(table, &npm::TaskSpec::random_score)).npm, 0.0, 1e-9);
  EXPECT_NEAR(npm::compute_npm(at(table, &npm::TaskSpec::max_score)).npm, 100.0, 1e-9);
}

TEST(Npm, TwoTaskWorkedExample) {
  // Raw accuracies average 12.5 but both sit at their random baselines.
  const auto r = npm::compute_npm({{task("mc4", 25), 25}, {task("qa", 0), 0}});
  EXPECT_EQ(r.npm, 0.0);
  EXPECT_EQ(r.task_count(), 2u);
}

TEST(Npm, SingleTask) {
  EXPECT_DOUBLE_EQ(npm::compute_npm({{task("x", 25), 62.5}}).npm, 50.0);
}

TEST(Npm, BelowRandomIsNegative) {
  EXPECT_DOUBLE_EQ(npm::normalized_score(task("x", 50), 25), -50.0);
}

TEST(Npm, MeanOfPerTaskNormalized) {
  shardwright::SplitMix64 rng(1);
  const auto table = npm::builtin_task_table();
  std::vector<npm::TaskResult> results;
  for (const auto& t : table) results.push_back({t, 100 * rng.uniform01()});
  const auto r = npm::compute_npm(results);
  double sum = 0;
  for (const auto& [name, v] : r.per_task_normalized) sum += v;
  EXPECT_NEAR(r.npm, sum / 14, 1e-12);
}

TEST(Npm, InvariantUnderAffineRescalingOfATask) {
  // Expressing a task on a 0..1 scale instead of 0..100 leaves NPM unchanged.
  const auto a = npm::compute_npm({{task("x", 25), 70}, {task("y", 0), 40}});
  const auto b = npm::compute_npm({{task("x", 0.25, 1.0), 0.70}, {task("y", 0), 40}});
  EXPECT_NEAR(a.npm, b.npm, 1e-9);
}

TEST(Npm, Errors) {
  EXPECT_THROW(npm::compute_npm({}), std::invalid_argument);
  EXPECT_THROW(npm::compute_npm({{task("x", 0), 1}, {task("x", 0), 2}}), std::invalid_argument);
}

TEST(Npm, LoadsResultsAgainstTable) {
  const auto table = npm::builtin_task_table();
  const auto dir = t::temp_dir("npm");
  t::write_bytes(dir / "r.json", R"([{"task":"BoolQ","preferred_value":75},{"task":"FaQuAD","preferred_value":50}])");
  const auto results = npm::load_results(dir / "r.json", table);
  ASSERT_EQ(results.size(), 2u);
  EXPECT_DOUBLE_EQ(npm::compute_npm(results).npm, 50.0);
  t::write_bytes(dir / "bad.json", R"([{"task":"Nope","preferred_value":75}])");
  EXPECT_THROW(npm::load_results(dir / "bad.json", table), std::out_of_range);
}
