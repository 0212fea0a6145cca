#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shardwright::quality {

enum class Category { edu, stem, toxic };

inline constexpr std::array<Category, 3> kAllCategories = {Category::edu, Category::stem, Category::toxic};

std::string_view to_string(Category c);
/// Accepts "edu"/"educational", "stem", "toxic"/"offensive" (any case).
Category category_from_string(std::string_view s);

/// The closing line each annotation prompt asks the annotator to emit.
std::string_view score_marker(Category c);

inline constexpr int kMinScore = 0;
inline constexpr int kMaxScore = 5;

struct AnnotationLabel {
  std::string doc_id;
  Category category = Category::edu;
  int score = 0;
  std::string rationale;
};

class AnnotationParseError : public std::runtime_error {
 public:
  AnnotationParseError(std::string doc_id, Category category, const std::string& why);
  const std::string& doc_id() const { return doc_id_; }
  Category category() const { return category_; }

 private:
  std::string doc_id_;
  Category category_;
};

/// Extracts the integer after the category's marker. The last marker wins and
/// the value is clamped to [0, 5]. Throws AnnotationParseError when the
/// marker is missing or not followed by an integer.
int parse_annotation(std::string_view response, Category category, std::string_view doc_id = {});

/// Parses a full response into a label (rationale = text before the marker).
AnnotationLabel parse_annotation_label(std::string_view response, Category category, std::string doc_id);

/// Reads JSONL with either {doc_id, category, response_text} or
/// {doc_id, category, score}. When `only` is set, other categories are skipped.
std::vector<AnnotationLabel> load_annotations(const std::filesystem::path& path,
                                              std::optional<Category> only = std::nullopt);

struct ScoreDistribution {
  std::array<std::size_t, 6> counts{};
  std::size_t total = 0;

  double percent(int score) const;
};

/// Throws std::invalid_argument on empty input or out-of-range scores.
ScoreDistribution score_distribution(const std::vector<int>& scores);
ScoreDistribution score_distribution(const std::vector<AnnotationLabel>& labels);

/// Table with one row per category and columns 0..5, percentages rounded to
/// whole numbers.
std::string format_distribution_table(const std::vector<std::pair<std::string, ScoreDistribution>>& rows);

}  // namespace shardwright::quality
