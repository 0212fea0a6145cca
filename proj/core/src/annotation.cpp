#include "shardwright/annotation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "shardwright/jsonl.hpp"
#include "shardwright/text.hpp"

namespace shardwright::quality {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::edu: return "edu";
    case Category::stem: return "stem";
    case Category::toxic: return "toxic";
  }
  return "edu";
}

Category category_from_string(std::string_view s) {
  const auto l = text::ascii_lower(text::trim(s));
  if (l == "edu" || l == "educational") return Category::edu;
  if (l == "stem") return Category::stem;
  if (l == "toxic" || l == "offensive") return Category::toxic;
  throw std::invalid_argument("unknown category: " + std::string(s));
}

std::string_view score_marker(Category c) {
  switch (c) {
    case Category::edu: return "Pontuação educacional:";
    case Category::stem: return "Pontuação STEM:";
    case Category::toxic: return "Pontuação ofensiva:";
  }
  return "";
}

AnnotationParseError::AnnotationParseError(std::string doc_id, Category category, const std::string& why)
    : std::runtime_error("annotation " + (doc_id.empty() ? std::string("<unknown>") : doc_id) + " [" +
                         std::string(to_string(category)) + "]: " + why),
      doc_id_(std::move(doc_id)),
      category_(category) {}

namespace {

std::size_t rfind_marker(std::string_view hay, std::string_view marker) {
  const auto lowered = text::ascii_lower(hay);
  const auto m = text::ascii_lower(marker);
  return std::string_view(lowered).rfind(m);
}

struct Parsed {
  int score;
  std::size_t marker_pos;
};

Parsed parse_impl(std::string_view response, Category category, std::string_view doc_id) {
  const auto marker = score_marker(category);
  const auto pos = rfind_marker(response, marker);
  if (pos == std::string_view::npos) {
    throw AnnotationParseError(std::string(doc_id), category, "missing \"" + std::string(marker) + "\"");
  }
  std::size_t i = pos + marker.size();
  while (i < response.size() && (response[i] == ' ' || response[i] == '\t' || response[i] == '*' ||
                                 response[i] == '"' || response[i] == '\'' || response[i] == '`')) {
    ++i;
  }
  bool negative = false;
  if (i < response.size() && (response[i] == '-' || response[i] == '+')) {
    negative = response[i] == '-';
    ++i;
  }
  const std::size_t digits_begin = i;
  long value = 0;
  while (i < response.size() && response[i] >= '0' && response[i] <= '9') {
    value = std::min<long>(value * 10 + (response[i] - '0'), 1000000);
    ++i;
  }
  if (i == digits_begin) {
    throw AnnotationParseError(std::string(doc_id), category, "no integer after marker");
  }
  if (i + 1 < response.size() && (response[i] == '.' || response[i] == ',') && response[i + 1] >= '0' &&
      response[i + 1] <= '9') {
    throw AnnotationParseError(std::string(doc_id), category, "score is not an integer");
  }
  if (negative) value = -value;
  return {static_cast<int>(std::clamp<long>(value, kMinScore, kMaxScore)), pos};
}

}  // namespace

int parse_annotation(std::string_view response, Category category, std::string_view doc_id) {
  return parse_impl(response, category, doc_id).score;
}

AnnotationLabel parse_annotation_label(std::string_view response, Category category, std::string doc_id) {
  const auto parsed = parse_impl(response, category, doc_id);
  AnnotationLabel label;
  label.doc_id = std::move(doc_id);
  label.category = category;
  label.score = parsed.score;
  label.rationale = std::string(text::trim(response.substr(0, parsed.marker_pos)));
  return label;
}

std::vector<AnnotationLabel> load_annotations(const std::filesystem::path& path, std::optional<Category> only) {
  io::JsonlReader reader(path);
  std::vector<AnnotationLabel> out;
  std::string line;
  while (reader.next(line)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(reader.line_number()) + ": " + e.what());
    }
    const auto doc_id = j.at("doc_id").get<std::string>();
    const auto category = category_from_string(j.at("category").get<std::string>());
    if (only && *only != category) continue;
    if (j.contains("score")) {
      const int score = j.at("score").get<int>();
      if (score < kMinScore || score > kMaxScore) {
        throw AnnotationParseError(doc_id, category, "score out of range");
      }
      out.push_back({doc_id, category, score, {}});
    } else {
      out.push_back(parse_annotation_label(j.at("response_text").get<std::string>(), category, doc_id));
    }
  }
  return out;
}

double ScoreDistribution::percent(int score) const {
  if (total == 0 || score < kMinScore || score > kMaxScore) return 0.0;
  return 100.0 * static_cast<double>(counts[static_cast<std::size_t>(score)]) / static_cast<double>(total);
}

ScoreDistribution score_distribution(const std::vector<int>& scores) {
  if (scores.empty()) throw std::invalid_argument("score_distribution: no labels");
  ScoreDistribution d;
  for (const int s : scores) {
    if (s < kMinScore || s > kMaxScore) throw std::invalid_argument("score_distribution: score out of range");
    ++d.counts[static_cast<std::size_t>(s)];
  }
  d.total = scores.size();
  return d;
}

ScoreDistribution score_distribution(const std::vector<AnnotationLabel>& labels) {
  std::vector<int> scores;
  scores.reserve(labels.size());
  for (const auto& l : labels) scores.push_back(l.score);
  return score_distribution(scores);
}

std::string format_distribution_table(const std::vector<std::pair<std::string, ScoreDistribution>>& rows) {
  std::size_t name_w = 6;
  for (const auto& [name, _] : rows) name_w = std::max(name_w, name.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(name_w)) << "Scores";
  for (int s = kMinScore; s <= kMaxScore; ++s) os << "  " << std::right << std::setw(4) << s;
  os << '\n';
  for (const auto& [name, d] : rows) {
    os << std::left << std::setw(static_cast<int>(name_w)) << name;
    for (int s = kMinScore; s <= kMaxScore; ++s) {
      os << "  " << std::right << std::setw(3) << static_cast<long>(std::lround(d.percent(s))) << '%';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace shardwright::quality
