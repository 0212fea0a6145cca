#include "shardwright/pipeline.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <regex>

#include "json.hpp"
#include "shardwright/gzip.hpp"
#include "shardwright/jsonl.hpp"
#include "shardwright/parallel.hpp"

namespace shardwright::pipeline {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// ---- manifest ----

std::string CorpusManifest::to_json() const {
  ordered_json j;
  j["format"] = "shardwright-manifest/1";
  j["seed"] = seed;
  j["token_counter"] = token_counter;
  j["scores_present"] = scores_present;
  j["config"] = config_json.empty() ? ordered_json::object() : ordered_json::parse(config_json);
  auto& st = j["stages"] = ordered_json::array();
  for (const auto& s : stages) {
    st.push_back({{"stage", s.stage},
                  {"crawl_id", s.crawl_id},
                  {"docs_in", s.docs_in},
                  {"docs_out", s.docs_out},
                  {"words_in", s.words_in},
                  {"words_out", s.words_out},
                  {"removal_fraction", s.removal_fraction()}});
  }
  j["record_errors"] = record_errors;
  auto& sh = j["shards"] = ordered_json::array();
  for (const auto& s : shards) {
    char crc[9];
    std::snprintf(crc, sizeof crc, "%08x", s.crc32);
    sh.push_back({{"path", s.path}, {"bytes", s.bytes}, {"crc32", crc}, {"records", s.records}});
  }
  return j.dump(2) + "\n";
}

CorpusManifest CorpusManifest::from_json(std::string_view text) {
  const auto j = ordered_json::parse(text);
  CorpusManifest m;
  m.seed = j.value("seed", std::uint64_t{0});
  m.token_counter = j.value("token_counter", std::string("words"));
  m.scores_present = j.value("scores_present", false);
  if (j.contains("config") && !j["config"].empty()) m.config_json = j["config"].dump(2);
  for (const auto& s : j.value("stages", ordered_json::array())) {
    StageStats st;
    st.stage = s.at("stage").get<std::string>();
    st.crawl_id = s.value("crawl_id", std::string());
    st.docs_in = s.at("docs_in").get<std::size_t>();
    st.docs_out = s.at("docs_out").get<std::size_t>();
    st.words_in = s.value("words_in", std::size_t{0});
    st.words_out = s.value("words_out", std::size_t{0});
    if (st.docs_out > st.docs_in) throw std::invalid_argument("manifest: docs_out > docs_in in stage " + st.stage);
    m.stages.push_back(std::move(st));
  }
  if (j.contains("record_errors")) m.record_errors = j["record_errors"].get<std::map<std::string, std::size_t>>();
  for (const auto& s : j.value("shards", ordered_json::array())) {
    ShardInfo info;
    info.path = s.at("path").get<std::string>();
    info.bytes = s.at("bytes").get<std::uint64_t>();
    info.crc32 = static_cast<std::uint32_t>(std::stoul(s.at("crc32").get<std::string>(), nullptr, 16));
    info.records = s.value("records", std::size_t{0});
    m.shards.push_back(std::move(info));
  }
  return m;
}

CorpusManifest CorpusManifest::load(const fs::path& path) { return from_json(io::read_file(path)); }

// ---- shard I/O ----

std::uint32_t file_crc32(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::IoError("cannot open " + path.string());
  uLong crc = crc32(0L, Z_NULL, 0);
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    const auto n = in.gcount();
    if (n > 0) crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

namespace {

ShardInfo describe(const fs::path& root, const fs::path& file, std::size_t records) {
  return {fs::relative(file, root).generic_string(), fs::file_size(file), file_crc32(file), records};
}

std::string part_name(std::size_t i) {
  char name[32];
  std::snprintf(name, sizeof name, "part-%05zu.jsonl.gz", i);
  return name;
}

}  // namespace

std::vector<ShardInfo> write_shards(const fs::path& root, const fs::path& dir, const std::vector<std::string>& lines,
                                    std::uint64_t max_bytes) {
  fs::create_directories(dir);
  std::vector<ShardInfo> out;
  std::size_t part = 0;
  std::size_t i = 0;
  // An empty stage still gets one (empty) part so downstream readers see the directory.
  do {
    const auto path = dir / part_name(part++);
    io::JsonlWriter writer(path);
    std::size_t records = 0;
    while (i < lines.size() && (records == 0 || writer.bytes_written() < max_bytes)) {
      writer.write_line(lines[i++]);
      ++records;
    }
    writer.close();
    out.push_back(describe(root, path, records));
  } while (i < lines.size());
  return out;
}

std::vector<fs::path> shard_files(const fs::path& dir_or_file) {
  if (!fs::is_directory(dir_or_file)) {
    if (!fs::exists(dir_or_file)) throw io::IoError("no such shard path: " + dir_or_file.string());
    return {dir_or_file};
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir_or_file)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && (name.ends_with(".jsonl") || name.ends_with(".jsonl.gz"))) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

namespace {

template <typename T, typename Parse>
std::vector<T> read_records(const fs::path& dir_or_file, Parse parse) {
  std::vector<T> out;
  for (const auto& f : shard_files(dir_or_file)) {
    io::JsonlReader reader(f);
    std::string line;
    while (reader.next(line)) {
      try {
        out.push_back(parse(line));
      } catch (const std::exception& e) {
        throw io::IoError(f.string() + ":" + std::to_string(reader.line_number()) + ": " + e.what());
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Document> read_documents(const fs::path& dir_or_file) {
  return read_records<Document>(dir_or_file, [](const std::string& l) { return Document::from_json(l); });
}

std::vector<warc::RawPage> read_pages(const fs::path& dir_or_file) {
  return read_records<warc::RawPage>(dir_or_file, [](const std::string& l) { return warc::page_from_json(l); });
}

// ---- stages ----

IngestResult ingest_warcs(const std::vector<fs::path>& inputs, std::string_view crawl_id, std::string_view language) {
  IngestResult result;
  for (const auto& path : inputs) {
    io::InputFile file(path);
    warc::WarcReader reader(file.source());
    warc::WarcEntry entry;
    while (reader.next(entry)) {
      ++result.records_read;
      if (auto* err = std::get_if<warc::RecordError>(&entry)) {
        result.errors.push_back(*err);
        continue;
      }
      const auto& rec = std::get<warc::WarcRecord>(entry);
      if (rec.record_type != warc::RecordType::response) {
        ++result.skipped[std::string(warc::to_string(warc::SkipReason::not_response))];
        continue;
      }
      if (!language.empty() && !warc::select_language(rec, language)) {
        ++result.skipped["language"];
        continue;
      }
      try {
        result.pages.push_back(warc::to_raw_page(rec, crawl_id));
      } catch (const warc::SkipPage& s) {
        ++result.skipped[std::string(warc::to_string(s.reason()))];
      }
    }
  }
  return result;
}

std::vector<Document> extract_pages(const std::vector<warc::RawPage>& pages, const extraction::ExtractionParams& params,
                                    std::size_t workers) {
  std::vector<Document> docs(pages.size());
  parallel_for(pages.size(), workers, [&](std::size_t i) {
    const auto& p = pages[i];
    auto t = extraction::extract(p.html, params);
    auto& d = docs[i];
    d.id = p.id;
    d.url = p.url;
    d.crawl_id = p.crawl_id;
    d.text = std::move(t.text);
    d.word_count = t.word_count;
    d.char_count = t.char_count;
    d.extraction_mode = std::string(extraction::to_string(params.mode));
  });
  std::erase_if(docs, [](const Document& d) { return d.word_count == 0; });
  return docs;
}

DedupOutput dedup_documents(const std::vector<Document>& docs, const dedup::DedupParams& params) {
  std::vector<dedup::InputDoc> inputs;
  inputs.reserve(docs.size());
  for (const auto& d : docs) inputs.push_back({d.id, d.text});
  DedupOutput out;
  out.result = dedup::dedup_crawl(inputs, params);
  for (const auto& d : docs) {
    if (std::binary_search(out.result.kept_ids.begin(), out.result.kept_ids.end(), d.id)) out.kept.push_back(d);
  }
  return out;
}

FilterOutput filter_documents(const std::vector<Document>& docs, filters::RuleSet ruleset,
                              const filters::RuleParams& params, std::size_t workers) {
  std::vector<std::string_view> texts;
  texts.reserve(docs.size());
  for (const auto& d : docs) texts.push_back(d.text);
  auto result = filters::apply_filters(texts, ruleset, params, workers);
  FilterOutput out;
  out.report = std::move(result.report);
  for (const auto i : result.kept) out.kept.push_back(docs[i]);
  return out;
}

ScoreModels ScoreModels::load(const std::map<quality::Category, fs::path>& paths) {
  auto one = [&](quality::Category c) {
    const auto it = paths.find(c);
    if (it == paths.end()) throw std::invalid_argument("no model for " + std::string(quality::to_string(c)));
    auto m = quality::RegressorModel::load(it->second);
    if (m.category != c) {
      throw std::invalid_argument(it->second.string() + " holds a " + std::string(quality::to_string(m.category)) +
                                  " model, expected " + std::string(quality::to_string(c)));
    }
    return m;
  };
  return {one(quality::Category::edu), one(quality::Category::stem), one(quality::Category::toxic)};
}

std::vector<Document> score_documents(const std::vector<Document>& docs, const quality::EmbeddingMatrix& embeddings,
                                      const ScoreModels& models, const ScoreConfig& selection, std::size_t workers) {
  std::vector<Document> scored = docs;
  std::vector<char> keep(docs.size(), 1);
  parallel_for(scored.size(), workers, [&](std::size_t i) {
    auto& d = scored[i];
    const auto x = embeddings.find(d.id);
    if (x.empty()) throw std::invalid_argument("no embedding for document " + d.id);
    d.edu = quality::score_document(models.edu, x);
    d.stem = quality::score_document(models.stem, x);
    d.toxic = quality::score_document(models.toxic, x);
    auto value = [&](quality::Category c) {
      switch (c) {
        case quality::Category::edu: return *d.edu;
        case quality::Category::stem: return *d.stem;
        case quality::Category::toxic: return *d.toxic;
      }
      return 0.0;
    };
    for (const auto c : selection.require) keep[i] &= quality::binarize(value(c), selection.threshold);
    for (const auto c : selection.exclude) keep[i] &= !quality::binarize(value(c), selection.threshold);
  });
  std::vector<Document> out;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (keep[i]) out.push_back(std::move(scored[i]));
  }
  return out;
}

// ---- orchestration ----

namespace {

std::string safe_name(std::string_view id) {
  std::string out;
  for (const char c : id) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  }
  return out.empty() ? "_" : out;
}

fs::path next_generation(const fs::path& output_dir) {
  fs::create_directories(output_dir);
  static const std::regex pattern(R"(gen-(\d+)(\.quarantine)?)");
  long next = 0;
  for (const auto& e : fs::directory_iterator(output_dir)) {
    std::smatch m;
    const auto name = e.path().filename().string();
    if (std::regex_match(name, m, pattern)) next = std::max(next, std::stol(m[1].str()) + 1);
  }
  char name[32];
  std::snprintf(name, sizeof name, "gen-%04ld", next);
  return output_dir / name;
}

std::size_t count_tokens(const std::vector<Document>& docs, const TokenCounter& counter, std::size_t workers) {
  std::vector<std::size_t> n(docs.size());
  parallel_for(docs.size(), workers, [&](std::size_t i) { n[i] = counter.count(docs[i].text); });
  std::size_t total = 0;
  for (const auto v : n) total += v;
  return total;
}

template <typename T, typename ToJson>
std::vector<std::string> to_lines(const std::vector<T>& items, ToJson to_json) {
  std::vector<std::string> lines;
  lines.reserve(items.size());
  for (const auto& x : items) lines.push_back(to_json(x));
  return lines;
}

std::vector<std::string> doc_lines(const std::vector<Document>& docs) {
  return to_lines(docs, [](const Document& d) { return d.to_json(); });
}

class Run {
 public:
  Run(const PipelineConfig& cfg, const RunOptions& opts, fs::path gen)
      : cfg_(cfg), workers_(std::max<std::size_t>(1, opts.workers)), gen_(std::move(gen)),
        tokens_(make_token_counter(cfg.vocabulary)) {
    manifest_.config_json = cfg.to_json();
    manifest_.seed = cfg.seed;
    manifest_.token_counter = tokens_->name();
    manifest_.scores_present = cfg.score.enabled;
    manifest_.generation = gen_.filename().string();
  }

  CorpusManifest execute() {
    for (const auto& c : cfg_.crawls) ingest(c);
    for (const auto& c : cfg_.crawls) extract(c.crawl_id);
    for (const auto& c : cfg_.crawls) dedup(c.crawl_id);
    for (const auto& c : cfg_.crawls) filter(c.crawl_id);
    if (cfg_.score.enabled) {
      embeddings_ = quality::load_embeddings(cfg_.score.embeddings);
      models_ = ScoreModels::load(cfg_.score.models);
    }
    for (const auto& c : cfg_.crawls) score(c.crawl_id);
    io::write_file_atomic(gen_ / "manifest.json", manifest_.to_json());
    return manifest_;
  }

 private:
  fs::path stage_dir(std::string_view crawl, std::string_view stage) const {
    return gen_ / safe_name(crawl) / std::string(stage);
  }

  void emit(const fs::path& dir, const std::vector<std::string>& lines) {
    auto infos = write_shards(gen_, dir, lines, cfg_.shard_max_bytes);
    manifest_.shards.insert(manifest_.shards.end(), infos.begin(), infos.end());
  }

  void emit_file(const fs::path& path, const std::string& bytes) {
    fs::create_directories(path.parent_path());
    io::write_file_atomic(path, bytes);
    manifest_.shards.push_back(describe(gen_, path, 1));
  }

  void record(std::string stage, const std::string& crawl, std::size_t din, std::size_t dout, std::size_t win,
              std::size_t wout) {
    manifest_.stages.push_back({std::move(stage), crawl, din, dout, win, wout});
  }

  void ingest(const CrawlInput& crawl) {
    auto r = ingest_warcs(crawl.inputs, crawl.crawl_id, cfg_.language);
    // Naive word counts give the "before content extraction" token figure.
    std::vector<std::size_t> naive(r.pages.size());
    parallel_for(r.pages.size(), workers_, [&](std::size_t i) {
      naive[i] = tokens_->count(extraction::extract_naive(r.pages[i].html).text);
    });
    std::size_t words = 0;
    for (const auto n : naive) words += n;
    naive_words_[crawl.crawl_id] = words;
    emit(stage_dir(crawl.crawl_id, "ingest"),
         to_lines(r.pages, [](const warc::RawPage& p) { return warc::page_to_json(p); }));
    if (!r.errors.empty()) {
      std::vector<std::string> lines;
      for (const auto& e : r.errors) {
        lines.push_back(nlohmann::json{{"offset", e.offset}, {"message", e.message}}.dump());
      }
      emit(gen_ / safe_name(crawl.crawl_id) / "reports" / "record_errors", lines);
    }
    manifest_.record_errors[crawl.crawl_id] = r.errors.size();
    record("ingest", crawl.crawl_id, r.records_read, r.pages.size(), 0, words);
  }

  void extract(const std::string& crawl) {
    const auto pages = read_pages(stage_dir(crawl, "ingest"));
    const auto docs = extract_pages(pages, cfg_.extraction, workers_);
    emit(stage_dir(crawl, "extract"), doc_lines(docs));
    record("extract", crawl, pages.size(), docs.size(), naive_words_[crawl], count_tokens(docs, *tokens_, workers_));
  }

  void dedup(const std::string& crawl) {
    const auto docs = read_documents(stage_dir(crawl, "extract"));
    auto params = cfg_.dedup;
    params.workers = workers_;
    const auto out = dedup_documents(docs, params);
    emit(stage_dir(crawl, "dedup"), doc_lines(out.kept));
    emit(gen_ / safe_name(crawl) / "reports" / "clusters",
         to_lines(out.result.clusters, [](const dedup::DuplicateCluster& c) { return dedup::cluster_to_json(c); }));
    record("dedup", crawl, docs.size(), out.kept.size(), count_tokens(docs, *tokens_, workers_),
           count_tokens(out.kept, *tokens_, workers_));
  }

  void filter(const std::string& crawl) {
    const auto docs = read_documents(stage_dir(crawl, "dedup"));
    const auto out = filter_documents(docs, cfg_.ruleset, cfg_.rules, workers_);
    emit(stage_dir(crawl, "filter"), doc_lines(out.kept));
    emit_file(gen_ / safe_name(crawl) / "reports" / "filter_report.json", out.report.to_json() + "\n");
    record("filter", crawl, docs.size(), out.kept.size(), count_tokens(docs, *tokens_, workers_),
           count_tokens(out.kept, *tokens_, workers_));
  }

  void score(const std::string& crawl) {
    const auto docs = read_documents(stage_dir(crawl, "filter"));
    const auto out = cfg_.score.enabled ? score_documents(docs, embeddings_, models_, cfg_.score, workers_) : docs;
    emit(stage_dir(crawl, "score"), doc_lines(out));
    record("score", crawl, docs.size(), out.size(), count_tokens(docs, *tokens_, workers_),
           count_tokens(out, *tokens_, workers_));
  }

  const PipelineConfig& cfg_;
  std::size_t workers_;
  fs::path gen_;
  std::unique_ptr<TokenCounter> tokens_;
  CorpusManifest manifest_;
  std::map<std::string, std::size_t> naive_words_;
  quality::EmbeddingMatrix embeddings_;
  ScoreModels models_;
};

}  // namespace

CorpusManifest run_pipeline(const PipelineConfig& config, const RunOptions& options) {
  const auto gen = next_generation(config.output_dir);
  fs::create_directories(gen);
  try {
    return Run(config, options, gen).execute();
  } catch (const std::exception& e) {
    auto quarantine = gen;
    quarantine += ".quarantine";
    std::error_code ec;
    fs::rename(gen, quarantine, ec);
    if (ec) quarantine.clear();
    throw PipelineError(std::string("pipeline failed: ") + e.what(), quarantine);
  }
}

}  // namespace shardwright::pipeline
