#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace shardwright {

/// An extracted document as it travels through the stages after ingest.
struct Document {
  std::string id;
  std::string url;
  std::string crawl_id;
  std::string text;
  std::size_t word_count = 0;
  std::size_t char_count = 0;
  std::string extraction_mode;
  std::optional<double> edu;
  std::optional<double> stem;
  std::optional<double> toxic;

  bool has_scores() const { return edu && stem && toxic; }
  /// One JSON object; score fields are omitted until scoring has run.
  std::string to_json() const;
  static Document from_json(std::string_view line);
};

}  // namespace shardwright
