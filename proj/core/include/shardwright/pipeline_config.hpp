#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shardwright/annotation.hpp"
#include "shardwright/dedup.hpp"
#include "shardwright/extraction.hpp"
#include "shardwright/rule_filters.hpp"

namespace shardwright::pipeline {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CrawlInput {
  std::string crawl_id;
  std::vector<std::filesystem::path> inputs;  // WARC files, plain or gzip
};

struct ScoreConfig {
  bool enabled = false;
  std::filesystem::path embeddings;
  std::map<quality::Category, std::filesystem::path> models;
  /// Binarization threshold on the rounded score.
  int threshold = 3;
  /// Categories whose binarized score must be positive to keep a document.
  std::vector<quality::Category> require;
  /// Categories whose binarized score must be negative to keep a document.
  std::vector<quality::Category> exclude;
};

struct PipelineConfig {
  std::vector<CrawlInput> crawls;
  std::filesystem::path output_dir;
  std::uint64_t seed = 1;
  /// Target language code; empty keeps every record.
  std::string language = "pt";
  extraction::ExtractionParams extraction;
  dedup::DedupParams dedup;
  filters::RuleSet ruleset = filters::RuleSet::both;
  filters::RuleParams rules;
  std::filesystem::path stopwords_file;
  std::filesystem::path restricted_words_file;
  ScoreConfig score;
  std::uint64_t shard_max_bytes = 256ull << 20;  // uncompressed
  /// Subword vocabulary for token counts; word counts when empty.
  std::filesystem::path vocabulary;

  /// Every setting, defaults included. Recorded verbatim in the manifest.
  std::string to_json() const;
};

/// Parses and checks a config. Relative paths resolve against `base_dir`.
/// Throws ConfigError naming the offending key.
PipelineConfig parse_config(std::string_view json, const std::filesystem::path& base_dir);
PipelineConfig validate_config(const std::filesystem::path& path);

}  // namespace shardwright::pipeline
