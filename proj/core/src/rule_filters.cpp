#include "shardwright/rule_filters.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "shardwright/parallel.hpp"
#include "shardwright/text.hpp"

namespace shardwright::filters {

namespace {

constexpr double kEps = 1e-12;

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + needle.size())) ++n;
  return n;
}

bool ends_with_ellipsis(std::string_view line) {
  const auto t = text::trim_right(line);
  return t.ends_with("...") || t.ends_with("…");
}

std::string normalize_phrase(std::string_view phrase) {
  const auto lowered = text::to_lower(phrase);
  std::string out;
  for (auto w : text::words(lowered)) {
    if (!out.empty()) out.push_back(' ');
    out.append(w);
  }
  return out;
}

}  // namespace

std::set<std::string> RuleParams::default_stopwords() {
  return {
      "a",     "à",     "ao",    "aos",   "as",     "até",    "com",   "como",  "da",   "das",
      "de",    "dela",  "dele",  "depois", "do",    "dos",    "e",     "é",     "ela",  "ele",
      "em",    "entre", "era",   "essa",  "esse",   "está",   "eu",    "foi",   "há",   "isso",
      "já",    "lhe",   "mais",  "mas",   "me",     "mesmo",  "muito", "na",    "nas",  "não",
      "nem",   "no",    "nos",   "o",     "os",     "ou",     "para",  "pela",  "pelo", "por",
      "quando", "que",  "quem",  "se",    "sem",    "seu",    "sua",   "também", "um",  "uma",
  };
}

void RuleParams::validate() const {
  if (min_words >= max_words) throw std::invalid_argument("rules: min_words must be < max_words");
  if (!(min_mean_wlen < max_mean_wlen)) throw std::invalid_argument("rules: min_mean_wlen must be < max_mean_wlen");
  auto frac = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string("rules: ") + name + " must be in [0,1]");
  };
  frac(max_ellipsis_lines, "max_ellipsis_lines");
  frac(min_alpha_fraction, "min_alpha_fraction");
  if (max_symbol_ratio < 0.0) throw std::invalid_argument("rules: max_symbol_ratio must be >= 0");
}

std::set<std::string> load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto norm = normalize_phrase(t);
    if (!norm.empty()) out.insert(std::move(norm));
  }
  return out;
}

std::size_t count_sentences(std::string_view t) {
  std::size_t count = 0;
  std::size_t seg_start = 0;
  auto close_segment = [&](std::size_t end) {
    if (text::word_count(t.substr(seg_start, end - seg_start)) > 0) ++count;
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char c = t[i];
    if (c != '.' && c != '!' && c != '?') continue;
    const bool boundary = i + 1 == t.size() || t[i + 1] == ' ' || t[i + 1] == '\n' || t[i + 1] == '\t' ||
                          t[i + 1] == '\r';
    if (!boundary) continue;
    close_segment(i + 1);
    seg_start = i + 1;
  }
  if (seg_start < t.size()) close_segment(t.size());
  return count;
}

DocStats doc_stats(std::string_view t, const RuleParams& params) {
  DocStats s;
  const auto lowered = text::to_lower(t);
  const auto ws = text::words(lowered);
  s.word_count = ws.size();

  std::size_t total_len = 0, alpha_words = 0;
  std::string joined = " ";
  for (auto w : ws) {
    const auto cps = text::to_u32(w);
    total_len += cps.size();
    for (char32_t cp : cps) {
      if (text::is_alpha(cp)) {
        ++alpha_words;
        break;
      }
    }
    if (params.stopwords.contains(std::string(w))) ++s.stopword_count;
    joined.append(w);
    joined.push_back(' ');
  }
  if (s.word_count > 0) {
    s.mean_word_length = static_cast<double>(total_len) / static_cast<double>(s.word_count);
    s.alpha_word_fraction = static_cast<double>(alpha_words) / static_cast<double>(s.word_count);
  }

  const std::size_t symbols = count_occurrences(t, "#") + count_occurrences(t, "...") + count_occurrences(t, "…");
  s.symbol_to_word_ratio =
      static_cast<double>(symbols) / static_cast<double>(std::max<std::size_t>(s.word_count, 1));

  std::size_t nonempty = 0, ellipsis = 0;
  for (auto line : text::lines(t)) {
    if (text::trim(line).empty()) continue;
    ++nonempty;
    if (ends_with_ellipsis(line)) ++ellipsis;
  }
  if (nonempty > 0) s.ellipsis_line_fraction = static_cast<double>(ellipsis) / static_cast<double>(nonempty);

  s.sentence_count = count_sentences(t);
  s.contains_brace = t.find('{') != std::string_view::npos;
  s.contains_lorem_ipsum = lowered.find("lorem ipsum") != std::string::npos;
  s.contains_javascript = lowered.find("javascript") != std::string::npos;
  for (const auto& entry : params.restricted_words) {
    if (entry.empty()) continue;
    if (joined.find(" " + entry + " ") != std::string::npos) s.restricted_word_hits.push_back(entry);
  }
  return s;
}

std::vector<std::string_view> massiveweb_rules() {
  return {rule::word_count_low,    rule::word_count_high,     rule::mean_wlen_low,      rule::mean_wlen_high,
          rule::symbol_ratio_high, rule::ellipsis_lines_high, rule::alpha_fraction_low, rule::stopwords_low};
}

std::vector<std::string_view> c4_rules() {
  return {rule::contains_brace, rule::lorem_ipsum, rule::javascript, rule::restricted_words, rule::sentences_low};
}

FilterVerdict massiveweb_verdict(const DocStats& s, const RuleParams& p) {
  FilterVerdict v;
  auto fail = [&](std::string_view id) { v.violated_rules.emplace_back(id); };
  if (s.word_count < p.min_words) fail(rule::word_count_low);
  if (s.word_count > p.max_words) fail(rule::word_count_high);
  if (s.mean_word_length < p.min_mean_wlen - kEps) fail(rule::mean_wlen_low);
  if (s.mean_word_length > p.max_mean_wlen + kEps) fail(rule::mean_wlen_high);
  if (s.symbol_to_word_ratio > p.max_symbol_ratio + kEps) fail(rule::symbol_ratio_high);
  if (s.ellipsis_line_fraction > p.max_ellipsis_lines + kEps) fail(rule::ellipsis_lines_high);
  if (s.alpha_word_fraction < p.min_alpha_fraction - kEps) fail(rule::alpha_fraction_low);
  if (s.stopword_count < p.min_stopwords) fail(rule::stopwords_low);
  v.keep = v.violated_rules.empty();
  return v;
}

FilterVerdict c4_verdict(const DocStats& s, const RuleParams& p) {
  FilterVerdict v;
  auto fail = [&](std::string_view id) { v.violated_rules.emplace_back(id); };
  if (s.contains_brace) fail(rule::contains_brace);
  if (s.contains_lorem_ipsum) fail(rule::lorem_ipsum);
  if (s.contains_javascript) fail(rule::javascript);
  if (!s.restricted_word_hits.empty()) fail(rule::restricted_words);
  if (s.sentence_count < p.min_sentences) fail(rule::sentences_low);
  v.keep = v.violated_rules.empty();
  return v;
}

std::string_view to_string(RuleSet r) {
  switch (r) {
    case RuleSet::none: return "none";
    case RuleSet::massiveweb: return "massiveweb";
    case RuleSet::c4: return "c4";
    case RuleSet::both: return "both";
  }
  return "none";
}

RuleSet ruleset_from_string(std::string_view s) {
  if (s == "none") return RuleSet::none;
  if (s == "massiveweb") return RuleSet::massiveweb;
  if (s == "c4") return RuleSet::c4;
  if (s == "both") return RuleSet::both;
  throw std::invalid_argument("unknown ruleset: " + std::string(s));
}

FilterVerdict verdict(std::string_view t, RuleSet ruleset, const RuleParams& params) {
  if (ruleset == RuleSet::none) return {};
  const auto stats = doc_stats(t, params);
  FilterVerdict out;
  if (ruleset == RuleSet::massiveweb || ruleset == RuleSet::both) {
    auto v = massiveweb_verdict(stats, params);
    out.violated_rules.insert(out.violated_rules.end(), v.violated_rules.begin(), v.violated_rules.end());
  }
  if (ruleset == RuleSet::c4 || ruleset == RuleSet::both) {
    auto v = c4_verdict(stats, params);
    out.violated_rules.insert(out.violated_rules.end(), v.violated_rules.begin(), v.violated_rules.end());
  }
  out.keep = out.violated_rules.empty();
  return out;
}

double FilterReport::removal_fraction() const {
  return docs_in == 0 ? 0.0 : 1.0 - static_cast<double>(docs_out) / static_cast<double>(docs_in);
}

void FilterReport::merge(const FilterReport& other) {
  docs_in += other.docs_in;
  docs_out += other.docs_out;
  for (const auto& [k, v] : other.rule_violations) rule_violations[k] += v;
}

std::string FilterReport::to_json() const {
  nlohmann::json j;
  j["ruleset"] = std::string(to_string(ruleset));
  j["docs_in"] = docs_in;
  j["docs_out"] = docs_out;
  j["removal_fraction"] = removal_fraction();
  j["rule_violations"] = rule_violations;
  return j.dump(2);
}

FilterResult apply_filters(const std::vector<std::string_view>& corpus, RuleSet ruleset, const RuleParams& params,
                           std::size_t workers) {
  params.validate();
  std::vector<FilterVerdict> verdicts(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) { verdicts[i] = verdict(corpus[i], ruleset, params); });

  FilterResult result;
  result.report.ruleset = ruleset;
  result.report.docs_in = corpus.size();
  if (ruleset == RuleSet::massiveweb || ruleset == RuleSet::both) {
    for (auto r : massiveweb_rules()) result.report.rule_violations[std::string(r)] = 0;
  }
  if (ruleset == RuleSet::c4 || ruleset == RuleSet::both) {
    for (auto r : c4_rules()) result.report.rule_violations[std::string(r)] = 0;
  }
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    for (const auto& r : verdicts[i].violated_rules) ++result.report.rule_violations[r];
    if (verdicts[i].keep) result.kept.push_back(i);
  }
  result.report.docs_out = result.kept.size();
  return result;
}

}  // namespace shardwright::filters
