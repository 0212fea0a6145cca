#include "shardwright/pipeline_config.hpp"

#include <algorithm>
#include <initializer_list>

#include "json.hpp"
#include "shardwright/gzip.hpp"

namespace shardwright::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key \"" + (where.empty() ? key : std::string(where) + "." + key) + "\"");
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, std::string_view where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + key + ": wrong type");
  }
}

fs::path existing_path(const json& value, const fs::path& base, const std::string& key) {
  if (!value.is_string()) throw ConfigError(key + ": expected a path string");
  fs::path p = value.get<std::string>();
  if (p.is_relative()) p = base / p;
  p = p.lexically_normal();
  if (!fs::exists(p)) throw ConfigError(key + ": path does not exist: " + p.string());
  return p;
}

std::vector<quality::Category> categories(const json& list, const std::string& key) {
  if (!list.is_array()) throw ConfigError(key + ": expected a list of categories");
  std::vector<quality::Category> out;
  for (const auto& v : list) {
    try {
      out.push_back(quality::category_from_string(v.get<std::string>()));
    } catch (const std::exception&) {
      throw ConfigError(key + ": unknown category " + v.dump());
    }
  }
  return out;
}

// Component validators throw std::invalid_argument; surface them as config errors.
template <typename Fn>
void checked(Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

PipelineConfig parse_config(std::string_view text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "", {"crawls", "output_dir", "seed", "language", "extract", "dedup", "filter", "score",
                        "shard_max_bytes", "vocabulary"});
  PipelineConfig cfg;

  if (!root.contains("crawls") || !root["crawls"].is_array() || root["crawls"].empty()) {
    throw ConfigError("crawls: at least one crawl is required");
  }
  for (const auto& c : root["crawls"]) {
    check_keys(c, "crawls[]", {"id", "inputs"});
    CrawlInput crawl;
    read(c, "id", crawl.crawl_id, "crawls[]");
    if (crawl.crawl_id.empty()) throw ConfigError("crawls[].id is required");
    if (!c.contains("inputs") || !c["inputs"].is_array() || c["inputs"].empty()) {
      throw ConfigError("crawls[" + crawl.crawl_id + "].inputs: at least one input is required");
    }
    for (const auto& in : c["inputs"]) crawl.inputs.push_back(existing_path(in, base_dir, "crawls[].inputs"));
    if (std::any_of(cfg.crawls.begin(), cfg.crawls.end(),
                    [&](const CrawlInput& o) { return o.crawl_id == crawl.crawl_id; })) {
      throw ConfigError("crawls: duplicate crawl id " + crawl.crawl_id);
    }
    cfg.crawls.push_back(std::move(crawl));
  }

  if (!root.contains("output_dir") || !root["output_dir"].is_string()) throw ConfigError("output_dir is required");
  cfg.output_dir = fs::path(root["output_dir"].get<std::string>());
  if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;
  cfg.output_dir = cfg.output_dir.lexically_normal();

  read(root, "seed", cfg.seed, "");
  read(root, "language", cfg.language, "");
  read(root, "shard_max_bytes", cfg.shard_max_bytes, "");
  if (cfg.shard_max_bytes == 0) throw ConfigError("shard_max_bytes must be > 0");
  if (root.contains("vocabulary")) cfg.vocabulary = existing_path(root["vocabulary"], base_dir, "vocabulary");

  if (root.contains("extract")) {
    const auto& e = root["extract"];
    check_keys(e, "extract", {"mode", "max_link_density", "min_block_words", "boilerplate_tags"});
    if (e.contains("mode")) {
      checked([&] { cfg.extraction.mode = extraction::mode_from_string(e["mode"].get<std::string>()); });
    }
    read(e, "max_link_density", cfg.extraction.max_link_density, "extract");
    read(e, "min_block_words", cfg.extraction.min_block_words, "extract");
    read(e, "boilerplate_tags", cfg.extraction.boilerplate_tags, "extract");
  }
  checked([&] { cfg.extraction.validate(); });

  cfg.dedup.seed = cfg.seed;
  if (root.contains("dedup")) {
    const auto& d = root["dedup"];
    check_keys(d, "dedup", {"k", "num_perms", "bands", "rows", "threshold"});
    read(d, "k", cfg.dedup.k, "dedup");
    read(d, "num_perms", cfg.dedup.num_perms, "dedup");
    read(d, "bands", cfg.dedup.bands, "dedup");
    read(d, "rows", cfg.dedup.rows, "dedup");
    read(d, "threshold", cfg.dedup.threshold, "dedup");
  }
  checked([&] { cfg.dedup.validate(); });

  if (root.contains("filter")) {
    const auto& f = root["filter"];
    check_keys(f, "filter",
               {"ruleset", "min_words", "max_words", "min_mean_wlen", "max_mean_wlen", "max_symbol_ratio",
                "max_ellipsis_lines", "min_alpha_fraction", "min_stopwords", "min_sentences", "stopwords_file",
                "restricted_words_file"});
    if (f.contains("ruleset")) {
      checked([&] { cfg.ruleset = filters::ruleset_from_string(f["ruleset"].get<std::string>()); });
    }
    auto& r = cfg.rules;
    read(f, "min_words", r.min_words, "filter");
    read(f, "max_words", r.max_words, "filter");
    read(f, "min_mean_wlen", r.min_mean_wlen, "filter");
    read(f, "max_mean_wlen", r.max_mean_wlen, "filter");
    read(f, "max_symbol_ratio", r.max_symbol_ratio, "filter");
    read(f, "max_ellipsis_lines", r.max_ellipsis_lines, "filter");
    read(f, "min_alpha_fraction", r.min_alpha_fraction, "filter");
    read(f, "min_stopwords", r.min_stopwords, "filter");
    read(f, "min_sentences", r.min_sentences, "filter");
    if (f.contains("stopwords_file")) {
      cfg.stopwords_file = existing_path(f["stopwords_file"], base_dir, "filter.stopwords_file");
      r.stopwords = filters::load_word_list(cfg.stopwords_file);
    }
    if (f.contains("restricted_words_file")) {
      cfg.restricted_words_file = existing_path(f["restricted_words_file"], base_dir, "filter.restricted_words_file");
      r.restricted_words = filters::load_word_list(cfg.restricted_words_file);
    }
  }
  checked([&] { cfg.rules.validate(); });

  if (root.contains("score")) {
    const auto& s = root["score"];
    check_keys(s, "score", {"enabled", "embeddings", "models", "threshold", "require", "exclude"});
    read(s, "enabled", cfg.score.enabled, "score");
    read(s, "threshold", cfg.score.threshold, "score");
    if (cfg.score.threshold < quality::kMinScore || cfg.score.threshold > quality::kMaxScore) {
      throw ConfigError("score.threshold must be in [0,5]");
    }
    if (s.contains("require")) cfg.score.require = categories(s["require"], "score.require");
    if (s.contains("exclude")) cfg.score.exclude = categories(s["exclude"], "score.exclude");
    if (cfg.score.enabled) {
      if (!s.contains("embeddings")) throw ConfigError("score.embeddings is required when scoring is enabled");
      cfg.score.embeddings = existing_path(s["embeddings"], base_dir, "score.embeddings");
      if (!s.contains("models")) throw ConfigError("score.models is required when scoring is enabled");
      const auto& m = s["models"];
      check_keys(m, "score.models", {"edu", "stem", "toxic"});
      for (const auto c : quality::kAllCategories) {
        const std::string key(quality::to_string(c));
        if (!m.contains(key)) throw ConfigError("score.models." + key + " is required when scoring is enabled");
        cfg.score.models[c] = existing_path(m[key], base_dir, "score.models." + key);
      }
    } else if (!cfg.score.require.empty() || !cfg.score.exclude.empty()) {
      throw ConfigError("score.require/exclude need score.enabled");
    }
  }
  return cfg;
}

PipelineConfig validate_config(const fs::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const std::exception& e) {
    throw ConfigError("cannot read config " + path.string() + ": " + e.what());
  }
  return parse_config(text, fs::absolute(path).parent_path());
}

std::string PipelineConfig::to_json() const {
  nlohmann::ordered_json j;
  auto& cr = j["crawls"] = nlohmann::ordered_json::array();
  for (const auto& c : crawls) {
    nlohmann::ordered_json in = nlohmann::ordered_json::array();
    for (const auto& p : c.inputs) in.push_back(p.generic_string());
    cr.push_back({{"id", c.crawl_id}, {"inputs", in}});
  }
  j["output_dir"] = output_dir.generic_string();
  j["seed"] = seed;
  j["language"] = language;
  j["shard_max_bytes"] = shard_max_bytes;
  if (!vocabulary.empty()) j["vocabulary"] = vocabulary.generic_string();
  j["extract"] = {{"mode", std::string(extraction::to_string(extraction.mode))},
                  {"max_link_density", extraction.max_link_density},
                  {"min_block_words", extraction.min_block_words},
                  {"boilerplate_tags", extraction.boilerplate_tags}};
  j["dedup"] = {{"k", dedup.k},
                {"num_perms", dedup.num_perms},
                {"bands", dedup.bands},
                {"rows", dedup.rows},
                {"threshold", dedup.threshold}};
  nlohmann::ordered_json f = {{"ruleset", std::string(filters::to_string(ruleset))},
                              {"min_words", rules.min_words},
                              {"max_words", rules.max_words},
                              {"min_mean_wlen", rules.min_mean_wlen},
                              {"max_mean_wlen", rules.max_mean_wlen},
                              {"max_symbol_ratio", rules.max_symbol_ratio},
                              {"max_ellipsis_lines", rules.max_ellipsis_lines},
                              {"min_alpha_fraction", rules.min_alpha_fraction},
                              {"min_stopwords", rules.min_stopwords},
                              {"min_sentences", rules.min_sentences}};
  if (!stopwords_file.empty()) f["stopwords_file"] = stopwords_file.generic_string();
  if (!restricted_words_file.empty()) f["restricted_words_file"] = restricted_words_file.generic_string();
  j["filter"] = f;
  nlohmann::ordered_json s = {{"enabled", score.enabled}, {"threshold", score.threshold}};
  if (score.enabled) {
    s["embeddings"] = score.embeddings.generic_string();
    for (const auto& [c, p] : score.models) s["models"][std::string(quality::to_string(c))] = p.generic_string();
  }
  auto names = [](const std::vector<quality::Category>& cs) {
    std::vector<std::string> out;
    for (const auto c : cs) out.emplace_back(quality::to_string(c));
    return out;
  };
  s["require"] = names(score.require);
  s["exclude"] = names(score.exclude);
  j["score"] = s;
  return j.dump(2);
}

}  // namespace shardwright::pipeline
