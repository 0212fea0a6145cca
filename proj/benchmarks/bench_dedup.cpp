#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "shardwright/dedup.hpp"

namespace dd = shardwright::dedup;

static void BM_Shingle(benchmark::State& state) {
  shardwright::SplitMix64 rng(1);
  const auto text = shardwright::bench::prose(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dd::shingle(text, 5));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Shingle)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_MinHashSignature(benchmark::State& state) {
  shardwright::SplitMix64 rng(2);
  std::vector<std::uint64_t> hashes(static_cast<std::size_t>(state.range(0)));
  for (auto& h : hashes) h = rng.next();
  const auto set = dd::make_shingle_set(hashes, 5);
  for (auto _ : state) benchmark::DoNotOptimize(dd::minhash_signature(set, 128, 7));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * hashes.size()));
}
BENCHMARK(BM_MinHashSignature)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_DedupCrawl(benchmark::State& state) {
  shardwright::SplitMix64 rng(3);
  std::vector<std::string> texts;
  for (std::int64_t i = 0; i < state.range(0); ++i) texts.push_back(shardwright::bench::prose(rng, 300));
  std::vector<dd::InputDoc> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) docs.push_back({"doc-" + std::to_string(i), texts[i]});
  dd::DedupParams params;
  params.workers = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(dd::dedup_crawl(docs, params));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * docs.size()));
}
BENCHMARK(BM_DedupCrawl)->Args({1000, 1})->Args({1000, 4})->UseRealTime()->Unit(benchmark::kMillisecond);
