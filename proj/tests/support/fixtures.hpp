#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shardwright/contamination.hpp"
#include "shardwright/dedup.hpp"
#include "shardwright/embeddings.hpp"
#include "shardwright/hash.hpp"

namespace shardwright::testing {

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(std::string_view name);

const std::vector<std::string>& portuguese_vocabulary();

/// Well-formed Portuguese-looking prose: sentences of 6-14 words, each
/// ending in a period, mixing function words and content words.
std::string prose(SplitMix64& rng, std::size_t words);

/// Space-separated random tokens drawn from a large synthetic vocabulary, so
/// unrelated texts share almost no 5-word shingles.
std::string random_words(SplitMix64& rng, std::size_t words);

/// A news-style page: navigation, header, sidebar and footer chrome around an
/// <article> with `paragraphs` paragraphs of prose.
std::string boilerplate_page(SplitMix64& rng, std::size_t paragraphs);

/// Pages from boilerplate_page with varying size.
std::vector<std::string> boilerplate_fixture_set(std::size_t n, std::uint64_t seed);

struct SyntheticWarc {
  std::string bytes;  // gzip member per record when requested
  std::size_t records = 0;
};

/// Deterministic crawl mixing Portuguese HTML responses (some near-duplicate,
/// some low quality), other-language pages, non-HTML payloads and request
/// records.
SyntheticWarc synthetic_warc(std::size_t records, std::uint64_t seed, bool gzip);

/// Hash-seeded unit vectors, one per id.
quality::EmbeddingMatrix stub_embeddings(const std::vector<std::string>& ids, std::size_t dim, std::uint64_t seed);

std::string record_id(std::size_t i);

/// Two random hash sets with |A u B| = union_size and Jaccard as close to
/// `jaccard` as integer sizes allow.
std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> planted_pair(SplitMix64& rng, double jaccard,
                                                                                std::size_t union_size);

struct PlantedDoc {
  std::string id;
  std::string text;
};

/// Shingle Jaccard (k=5) between a variant and its base.
inline constexpr double kPlantedJaccardLevels[] = {1.0, 0.95, 0.9, 0.85, 0.7, 0.5, 0.3};

/// Words a variant shares with its base to reach `jaccard` for k=5.
std::size_t planted_prefix_words(double jaccard);

/// `bases` random 120-word documents plus `variants` copies of random bases
/// that keep a prefix and replace the rest, so each variant sits at one of
/// kPlantedJaccardLevels against its base.
std::vector<PlantedDoc> planted_near_duplicates(std::size_t bases, std::size_t variants, std::uint64_t seed);

using IdPairs = std::set<std::pair<std::string, std::string>>;

/// Pairs of documents sharing a cluster, from union-find over every pair
/// whose exact Jaccard reaches the threshold (O(n^2) oracle).
IdPairs exhaustive_duplicate_pairs(const std::vector<PlantedDoc>& docs, std::size_t k, double threshold);

/// Pairs of ids sharing a cluster.
IdPairs cluster_pairs(const std::vector<dedup::DuplicateCluster>& clusters);

/// F1 of `found` against `truth`; 1 when both are empty.
double pair_f1(const IdPairs& found, const IdPairs& truth);

struct ContaminationInstance {
  std::vector<contamination::EvalExample> examples;
  std::vector<std::string> doc_ids;
  std::vector<std::string> doc_texts;
  std::vector<contamination::CorpusDoc> corpus() const;
};

/// Random prose examples spread over three tasks and a corpus of filler
/// documents, some of which embed all probe substrings of an example (a
/// leak), only two of them (a near miss) or the whole example text. Probes
/// use `params` exactly as scan_corpus does.
ContaminationInstance contamination_instance(std::size_t examples, std::size_t docs,
                                             const contamination::ProbeParams& params, std::uint64_t seed);

void write_bytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace shardwright::testing
