#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace shardwright::filters {

struct RuleParams {
  std::size_t min_words = 50;
  std::size_t max_words = 100000;
  double min_mean_wlen = 3.0;
  double max_mean_wlen = 10.0;
  double max_symbol_ratio = 0.1;
  double max_ellipsis_lines = 0.30;
  double min_alpha_fraction = 0.90;
  std::size_t min_stopwords = 2;
  std::size_t min_sentences = 3;
  std::set<std::string> stopwords = default_stopwords();
  std::set<std::string> restricted_words;  // lowercased words or phrases

  void validate() const;

  /// The shipped 60-entry Portuguese function-word list.
  static std::set<std::string> default_stopwords();
};

/// One entry per line, UTF-8; blank lines and lines starting with '#' are
/// ignored. Entries are lowercased.
std::set<std::string> load_word_list(const std::filesystem::path& path);

struct DocStats {
  std::size_t word_count = 0;
  double mean_word_length = 0.0;
  double symbol_to_word_ratio = 0.0;
  double ellipsis_line_fraction = 0.0;
  double alpha_word_fraction = 0.0;
  std::size_t stopword_count = 0;
  std::size_t sentence_count = 0;
  bool contains_brace = false;
  bool contains_lorem_ipsum = false;
  bool contains_javascript = false;
  std::vector<std::string> restricted_word_hits;
};

DocStats doc_stats(std::string_view text, const RuleParams& params);

/// Number of sentences: segments ending at '.', '!' or '?' followed by
/// whitespace or end of text, counting only segments that contain a word.
std::size_t count_sentences(std::string_view text);

// Rule identifiers as they appear in verdicts and reports.
namespace rule {
inline constexpr std::string_view word_count_low = "word_count_low";
inline constexpr std::string_view word_count_high = "word_count_high";
inline constexpr std::string_view mean_wlen_low = "mean_wlen_low";
inline constexpr std::string_view mean_wlen_high = "mean_wlen_high";
inline constexpr std::string_view symbol_ratio_high = "symbol_ratio_high";
inline constexpr std::string_view ellipsis_lines_high = "ellipsis_lines_high";
inline constexpr std::string_view alpha_fraction_low = "alpha_fraction_low";
inline constexpr std::string_view stopwords_low = "stopwords_low";
inline constexpr std::string_view contains_brace = "contains_brace";
inline constexpr std::string_view lorem_ipsum = "lorem_ipsum";
inline constexpr std::string_view javascript = "javascript";
inline constexpr std::string_view restricted_words = "restricted_words";
inline constexpr std::string_view sentences_low = "sentences_low";
}  // namespace rule

std::vector<std::string_view> massiveweb_rules();
std::vector<std::string_view> c4_rules();

struct FilterVerdict {
  bool keep = true;
  std::vector<std::string> violated_rules;
};

/// A statistic exactly at its threshold passes.
FilterVerdict massiveweb_verdict(const DocStats& stats, const RuleParams& params);
FilterVerdict c4_verdict(const DocStats& stats, const RuleParams& params);

enum class RuleSet { none, massiveweb, c4, both };

std::string_view to_string(RuleSet r);
RuleSet ruleset_from_string(std::string_view s);

FilterVerdict verdict(std::string_view text, RuleSet ruleset, const RuleParams& params);

struct FilterReport {
  RuleSet ruleset = RuleSet::none;
  std::size_t docs_in = 0;
  std::size_t docs_out = 0;
  std::map<std::string, std::size_t> rule_violations;

  double removal_fraction() const;
  /// Counters from disjoint parts of a corpus add up.
  void merge(const FilterReport& other);
  std::string to_json() const;
};

/// Returns the indices of kept documents (in input order) and the report.
struct FilterResult {
  std::vector<std::size_t> kept;
  FilterReport report;
};

FilterResult apply_filters(const std::vector<std::string_view>& corpus, RuleSet ruleset, const RuleParams& params,
                           std::size_t workers = 1);

}  // namespace shardwright::filters
