#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "shardwright/rule_filters.hpp"

namespace f = shardwright::filters;

static void BM_DocStats(benchmark::State& state) {
  shardwright::SplitMix64 rng(5);
  const auto text = shardwright::bench::prose(rng, static_cast<std::size_t>(state.range(0)));
  const f::RuleParams params;
  for (auto _ : state) benchmark::DoNotOptimize(f::doc_stats(text, params));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_DocStats)->Arg(100)->Arg(2000);

static void BM_ApplyFilters(benchmark::State& state) {
  shardwright::SplitMix64 rng(6);
  std::vector<std::string> docs;
  for (int i = 0; i < 1000; ++i) docs.push_back(shardwright::bench::prose(rng, 40 + rng.uniform(400)));
  const std::vector<std::string_view> views(docs.begin(), docs.end());
  const f::RuleParams params;
  const auto workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(f::apply_filters(views, f::RuleSet::both, params, workers));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * docs.size()));
}
BENCHMARK(BM_ApplyFilters)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
