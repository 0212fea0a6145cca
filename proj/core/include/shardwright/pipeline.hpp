#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shardwright/dedup.hpp"
#include "shardwright/document.hpp"
#include "shardwright/embeddings.hpp"
#include "shardwright/extraction.hpp"
#include "shardwright/pipeline_config.hpp"
#include "shardwright/regressor.hpp"
#include "shardwright/rule_filters.hpp"
#include "shardwright/token_counter.hpp"
#include "shardwright/warc.hpp"

namespace shardwright::pipeline {

inline constexpr std::string_view kStageNames[] = {"ingest", "extract", "dedup", "filter", "score"};

struct StageStats {
  std::string stage;
  std::string crawl_id;
  std::size_t docs_in = 0;
  std::size_t docs_out = 0;
  std::size_t words_in = 0;
  std::size_t words_out = 0;

  double removal_fraction() const {
    return docs_in == 0 ? 0.0 : 1.0 - static_cast<double>(docs_out) / static_cast<double>(docs_in);
  }
};

struct ShardInfo {
  std::string path;  // relative to the generation directory
  std::uint64_t bytes = 0;
  std::uint32_t crc32 = 0;
  std::size_t records = 0;
};

struct CorpusManifest {
  std::string config_json;  // snapshot, defaults filled
  std::uint64_t seed = 0;
  std::string generation;  // directory name; not serialized, so reruns compare equal
  std::string token_counter = "words";
  std::vector<StageStats> stages;  // in execution order
  std::vector<ShardInfo> shards;
  std::map<std::string, std::size_t> record_errors;  // per crawl
  bool scores_present = false;

  std::string to_json() const;
  static CorpusManifest from_json(std::string_view json);
  static CorpusManifest load(const std::filesystem::path& path);
};

/// Aligned text table with one row per (crawl, stage).
std::string stage_report(const CorpusManifest& manifest);

class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& what, std::filesystem::path quarantine)
      : std::runtime_error(what), quarantine_(std::move(quarantine)) {}
  const std::filesystem::path& quarantine_dir() const { return quarantine_; }

 private:
  std::filesystem::path quarantine_;
};

struct RunOptions {
  std::size_t workers = 1;
};

/// Runs ingest, extract, dedup, filter and score for every crawl into a fresh
/// generation directory `output_dir/gen-NNNN`. Each stage reads the shards
/// written by the previous one; manifest.json is written last, atomically.
/// On failure the generation directory is renamed with a ".quarantine"
/// suffix and PipelineError is thrown.
CorpusManifest run_pipeline(const PipelineConfig& config, const RunOptions& options = {});

// Individual stages, shared with the CLI.

struct IngestResult {
  std::vector<warc::RawPage> pages;
  std::size_t records_read = 0;
  std::vector<warc::RecordError> errors;
  std::map<std::string, std::size_t> skipped;  // by reason
};

/// Reads the archives in order, keeping HTML responses in `language`
/// (every language when empty). Throws TruncatedArchiveError.
IngestResult ingest_warcs(const std::vector<std::filesystem::path>& inputs, std::string_view crawl_id,
                          std::string_view language);

/// Pages whose extracted text is empty are dropped. Order is preserved.
std::vector<Document> extract_pages(const std::vector<warc::RawPage>& pages, const extraction::ExtractionParams& params,
                                    std::size_t workers);

struct DedupOutput {
  std::vector<Document> kept;  // input order
  dedup::DedupResult result;
};
DedupOutput dedup_documents(const std::vector<Document>& docs, const dedup::DedupParams& params);

struct FilterOutput {
  std::vector<Document> kept;
  filters::FilterReport report;
};
FilterOutput filter_documents(const std::vector<Document>& docs, filters::RuleSet ruleset,
                              const filters::RuleParams& params, std::size_t workers);

struct ScoreModels {
  quality::RegressorModel edu;
  quality::RegressorModel stem;
  quality::RegressorModel toxic;
  static ScoreModels load(const std::map<quality::Category, std::filesystem::path>& paths);
};

/// Attaches edu/stem/toxic scores, then applies the require/exclude rules.
/// Throws when a document has no embedding.
std::vector<Document> score_documents(const std::vector<Document>& docs, const quality::EmbeddingMatrix& embeddings,
                                      const ScoreModels& models, const ScoreConfig& selection, std::size_t workers);

/// Writes one JSON line per record into `dir/part-NNNNN.jsonl.gz`, starting a
/// new part once `max_bytes` of uncompressed data has been written.
/// Returned paths are relative to `root`.
std::vector<ShardInfo> write_shards(const std::filesystem::path& root, const std::filesystem::path& dir,
                                    const std::vector<std::string>& lines, std::uint64_t max_bytes);

/// Parts of a shard directory (or a single file) in name order.
std::vector<std::filesystem::path> shard_files(const std::filesystem::path& dir_or_file);
std::vector<Document> read_documents(const std::filesystem::path& dir_or_file);
std::vector<warc::RawPage> read_pages(const std::filesystem::path& dir_or_file);

std::uint32_t file_crc32(const std::filesystem::path& path);

}  // namespace shardwright::pipeline
