#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "shardwright/contamination.hpp"

namespace c = shardwright::contamination;

static void BM_ScanCorpus(benchmark::State& state) {
  shardwright::SplitMix64 rng(7);
  std::vector<c::EvalExample> examples;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    examples.push_back({"ex-" + std::to_string(i), "task", shardwright::bench::prose(rng, 60)});
  }
  std::vector<std::string> texts;
  for (int i = 0; i < 2000; ++i) texts.push_back(shardwright::bench::prose(rng, 300));
  std::vector<c::CorpusDoc> corpus;
  for (std::size_t i = 0; i < texts.size(); ++i) corpus.push_back({"doc-" + std::to_string(i), texts[i]});
  c::ProbeParams params;
  for (auto _ : state) benchmark::DoNotOptimize(c::scan_corpus(corpus, examples, params));
  std::int64_t bytes = 0;
  for (const auto& t : texts) bytes += static_cast<std::int64_t>(t.size());
  state.SetBytesProcessed(state.iterations() * bytes);
}
BENCHMARK(BM_ScanCorpus)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_SubstringIndexBuild(benchmark::State& state) {
  shardwright::SplitMix64 rng(8);
  std::vector<std::string> patterns;
  for (std::int64_t i = 0; i < state.range(0); ++i) patterns.push_back(shardwright::bench::prose(rng, 8).substr(0, 50));
  for (auto _ : state) benchmark::DoNotOptimize(c::SubstringIndex(patterns));
}
BENCHMARK(BM_SubstringIndexBuild)->Arg(300)->Arg(3000);
