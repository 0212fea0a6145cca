#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "shardwright/extraction.hpp"

namespace ex = shardwright::extraction;

namespace {

std::string page(std::size_t paragraphs) {
  shardwright::SplitMix64 rng(4);
  std::string html = "<html><head><title>Notícia</title><script>var x = 1;</script></head><body>"
                     "<nav><ul><li><a href=/>Início</a></li><li><a href=/p>Política</a></li></ul></nav>"
                     "<article><h1>Título</h1>";
  for (std::size_t i = 0; i < paragraphs; ++i) html += "<p>" + shardwright::bench::prose(rng, 60) + "</p>";
  html += "</article><footer><a href=/c>Contato</a> &copy; 2024</footer></body></html>";
  return html;
}

}  // namespace

static void BM_ExtractNaive(benchmark::State& state) {
  const auto html = page(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ex::extract_naive(html));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * html.size()));
}
BENCHMARK(BM_ExtractNaive)->Arg(5)->Arg(50);

static void BM_ExtractContent(benchmark::State& state) {
  const auto html = page(static_cast<std::size_t>(state.range(0)));
  const ex::ExtractionParams params;
  for (auto _ : state) benchmark::DoNotOptimize(ex::extract_content(html, params));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * html.size()));
}
BENCHMARK(BM_ExtractContent)->Arg(5)->Arg(50);
