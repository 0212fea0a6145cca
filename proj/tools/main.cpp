// Command-line front end. Worker count comes from SHARDWRIGHT_WORKERS only.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shardwright/annotation.hpp"
#include "shardwright/contamination.hpp"
#include "shardwright/embeddings.hpp"
#include "shardwright/gzip.hpp"
#include "shardwright/npm.hpp"
#include "shardwright/parallel.hpp"
#include "shardwright/pipeline.hpp"
#include "shardwright/regressor.hpp"

namespace fs = std::filesystem;
namespace sw = shardwright;
namespace pl = shardwright::pipeline;

namespace {

std::vector<std::string> doc_lines(const std::vector<sw::Document>& docs) {
  std::vector<std::string> lines;
  lines.reserve(docs.size());
  for (const auto& d : docs) lines.push_back(d.to_json());
  return lines;
}

void write_docs(const fs::path& out, const std::vector<sw::Document>& docs) {
  pl::write_shards(out, out, doc_lines(docs), 256ull << 20);
}

std::vector<sw::Document> read_all_docs(const std::vector<fs::path>& inputs) {
  std::vector<sw::Document> docs;
  for (const auto& in : inputs) {
    auto part = pl::read_documents(in);
    docs.insert(docs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return docs;
}

void emit(const std::optional<fs::path>& path, const std::string& text) {
  if (path) {
    sw::io::write_file_atomic(*path, text);
  } else {
    std::cout << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shardwright: web-crawl curation toolkit"};
  app.require_subcommand(1);
  const auto workers = sw::default_worker_count();

  // ingest
  std::vector<fs::path> ingest_inputs;
  std::string crawl_id, language = "pt";
  fs::path ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Read WARC archives into page shards");
  ingest->add_option("--input", ingest_inputs, "WARC files (plain or gzip)")->required()->check(CLI::ExistingFile);
  ingest->add_option("--crawl-id", crawl_id)->required();
  ingest->add_option("--language", language, "Target language; empty keeps all")->capture_default_str();
  ingest->add_option("--out", ingest_out, "Output shard directory")->required();
  ingest->callback([&] {
    auto r = pl::ingest_warcs(ingest_inputs, crawl_id, language);
    std::vector<std::string> lines;
    for (const auto& p : r.pages) lines.push_back(sw::warc::page_to_json(p));
    pl::write_shards(ingest_out, ingest_out, lines, 256ull << 20);
    for (const auto& e : r.errors) std::cerr << "record error at byte " << e.offset << ": " << e.message << "\n";
    std::cout << "records " << r.records_read << ", pages " << r.pages.size() << ", errors " << r.errors.size()
              << "\n";
  });

  // extract
  std::vector<fs::path> extract_inputs;
  std::string mode = "content";
  fs::path extract_out;
  auto* extract = app.add_subcommand("extract", "Extract text from page shards");
  extract->add_option("--input", extract_inputs, "Page shard files or directories")->required();
  extract->add_option("--mode", mode)->check(CLI::IsMember({"content", "naive"}))->capture_default_str();
  extract->add_option("--out", extract_out)->required();
  extract->callback([&] {
    sw::extraction::ExtractionParams params;
    params.mode = sw::extraction::mode_from_string(mode);
    std::vector<sw::warc::RawPage> pages;
    for (const auto& in : extract_inputs) {
      auto part = pl::read_pages(in);
      pages.insert(pages.end(), part.begin(), part.end());
    }
    const auto docs = pl::extract_pages(pages, params, workers);
    write_docs(extract_out, docs);
    std::cout << "pages " << pages.size() << ", documents " << docs.size() << "\n";
  });

  // dedup
  std::vector<fs::path> dedup_inputs;
  fs::path dedup_out;
  std::optional<fs::path> clusters_out;
  sw::dedup::DedupParams dp;
  auto* dedup = app.add_subcommand("dedup", "Remove near-duplicates within one crawl");
  dedup->add_option("--input", dedup_inputs)->required();
  dedup->add_option("--out", dedup_out)->required();
  dedup->add_option("--clusters", clusters_out, "Cluster report JSONL");
  dedup->add_option("--k", dp.k)->capture_default_str();
  dedup->add_option("--perms", dp.num_perms)->capture_default_str();
  dedup->add_option("--bands", dp.bands)->capture_default_str();
  dedup->add_option("--rows", dp.rows)->capture_default_str();
  dedup->add_option("--threshold", dp.threshold)->capture_default_str();
  dedup->add_option("--seed", dp.seed)->capture_default_str();
  dedup->callback([&] {
    dp.workers = workers;
    const auto docs = read_all_docs(dedup_inputs);
    const auto out = pl::dedup_documents(docs, dp);
    write_docs(dedup_out, out.kept);
    if (clusters_out) {
      std::string text;
      for (const auto& c : out.result.clusters) text += sw::dedup::cluster_to_json(c) + "\n";
      sw::io::write_file_atomic(*clusters_out, text);
    }
    const double frac = docs.empty() ? 0.0 : static_cast<double>(out.result.removed()) / docs.size();
    std::cout << "documents " << docs.size() << ", kept " << out.kept.size() << ", removed "
              << out.result.removed() << " (" << 100.0 * frac << "%)\n";
  });

  // filter
  std::vector<fs::path> filter_inputs;
  fs::path filter_out;
  std::string ruleset = "both";
  std::optional<fs::path> stopwords, restricted, filter_report;
  auto* filter = app.add_subcommand("filter", "Apply the heuristic rule sets");
  filter->add_option("--input", filter_inputs)->required();
  filter->add_option("--out", filter_out)->required();
  filter->add_option("--ruleset", ruleset)
      ->check(CLI::IsMember({"none", "massiveweb", "c4", "both"}))
      ->capture_default_str();
  filter->add_option("--stopwords", stopwords)->check(CLI::ExistingFile);
  filter->add_option("--restricted-words", restricted)->check(CLI::ExistingFile);
  filter->add_option("--report", filter_report, "FilterReport JSON (stdout when omitted)");
  filter->callback([&] {
    sw::filters::RuleParams params;
    if (stopwords) params.stopwords = sw::filters::load_word_list(*stopwords);
    if (restricted) params.restricted_words = sw::filters::load_word_list(*restricted);
    const auto docs = read_all_docs(filter_inputs);
    const auto out = pl::filter_documents(docs, sw::filters::ruleset_from_string(ruleset), params, workers);
    write_docs(filter_out, out.kept);
    emit(filter_report, out.report.to_json() + "\n");
  });

  // score
  std::vector<fs::path> score_inputs;
  fs::path score_out, emb_path;
  std::map<sw::quality::Category, fs::path> model_paths;
  fs::path edu_model, stem_model, toxic_model;
  pl::ScoreConfig selection;
  std::vector<std::string> require, exclude;
  auto* score = app.add_subcommand("score", "Attach edu/stem/toxic scores");
  score->add_option("--input", score_inputs)->required();
  score->add_option("--out", score_out)->required();
  score->add_option("--embeddings", emb_path, "EMBV1 file")->required()->check(CLI::ExistingFile);
  score->add_option("--edu-model", edu_model)->required()->check(CLI::ExistingFile);
  score->add_option("--stem-model", stem_model)->required()->check(CLI::ExistingFile);
  score->add_option("--toxic-model", toxic_model)->required()->check(CLI::ExistingFile);
  score->add_option("--threshold", selection.threshold)->capture_default_str();
  score->add_option("--require", require, "Keep only documents positive in these categories");
  score->add_option("--exclude", exclude, "Drop documents positive in these categories");
  score->callback([&] {
    selection.enabled = true;
    for (const auto& r : require) selection.require.push_back(sw::quality::category_from_string(r));
    for (const auto& e : exclude) selection.exclude.push_back(sw::quality::category_from_string(e));
    const auto models = pl::ScoreModels::load({{sw::quality::Category::edu, edu_model},
                                               {sw::quality::Category::stem, stem_model},
                                               {sw::quality::Category::toxic, toxic_model}});
    const auto docs = read_all_docs(score_inputs);
    const auto out = pl::score_documents(docs, sw::quality::load_embeddings(emb_path), models, selection, workers);
    write_docs(score_out, out);
    std::cout << "documents " << docs.size() << ", kept " << out.size() << "\n";
  });

  // train
  fs::path labels_path, train_emb, model_out;
  std::string category = "edu";
  std::uint64_t train_seed = 0;
  sw::quality::RegressorHyperparams hp;
  auto* train = app.add_subcommand("train", "Fit a quality regressor on annotated embeddings");
  train->add_option("--labels", labels_path, "Annotation JSONL")->required()->check(CLI::ExistingFile);
  train->add_option("--embeddings", train_emb)->required()->check(CLI::ExistingFile);
  train->add_option("--category", category)->capture_default_str();
  train->add_option("--out", model_out)->required();
  train->add_option("--seed", train_seed)->capture_default_str();
  train->add_option("--epochs", hp.epochs)->capture_default_str();
  train->add_option("--lr", hp.peak_learning_rate)->capture_default_str();
  train->add_option("--batch-size", hp.batch_size)->capture_default_str();
  train->callback([&] {
    const auto cat = sw::quality::category_from_string(category);
    const auto labels = sw::quality::load_annotations(labels_path, cat);
    sw::quality::TrainingLog log;
    const auto model = sw::quality::train_regressor(sw::quality::load_embeddings(train_emb), labels, hp, train_seed,
                                                    &log);
    model.save(model_out);
    std::cout << "labels " << labels.size() << ", final training MSE " << log.epoch_loss.back() << "\n";
  });

  // eval-npm
  fs::path results_path;
  std::optional<fs::path> tasks_path;
  bool npm_json = false;
  auto* npm = app.add_subcommand("eval-npm", "Aggregate benchmark results into NPM");
  npm->add_option("--results", results_path, "JSON list of {task, preferred_value}")
      ->required()
      ->check(CLI::ExistingFile);
  npm->add_option("--tasks", tasks_path, "Task table overriding the built-in one")->check(CLI::ExistingFile);
  npm->add_flag("--json", npm_json);
  npm->callback([&] {
    const auto table = tasks_path ? sw::npm::load_task_table(*tasks_path) : sw::npm::builtin_task_table();
    const auto report = sw::npm::compute_npm(sw::npm::load_results(results_path, table));
    std::cout << (npm_json ? report.to_json() + "\n" : report.format_table());
  });

  // contamination
  std::vector<fs::path> corpus;
  fs::path evals_path;
  sw::contamination::ProbeParams probe;
  bool exact_bytes = false;
  std::optional<fs::path> contamination_out;
  auto* cont = app.add_subcommand("contamination", "Find evaluation examples leaked into the corpus");
  cont->add_option("--corpus", corpus, "Document shards")->required();
  cont->add_option("--evals", evals_path, "JSONL of {example_id, task, text}")->required()->check(CLI::ExistingFile);
  cont->add_option("--seed", probe.seed)->capture_default_str();
  cont->add_option("--substrings", probe.substrings)->capture_default_str();
  cont->add_option("--length", probe.length)->capture_default_str();
  cont->add_flag("--exact-bytes", exact_bytes, "Match without whitespace normalization");
  cont->add_option("--out", contamination_out, "Report JSON (stdout when omitted)");
  cont->callback([&] {
    probe.normalize_whitespace = !exact_bytes;
    probe.workers = workers;
    const auto docs = read_all_docs(corpus);
    std::vector<sw::contamination::CorpusDoc> view;
    for (const auto& d : docs) view.push_back({d.id, d.text});
    const auto report = sw::contamination::scan_corpus(view, sw::contamination::load_eval_examples(evals_path), probe);
    emit(contamination_out, report.to_json() + "\n");
  });

  // stats
  fs::path manifest_path;
  auto* stats = app.add_subcommand("stats", "Print the per-stage accounting table of a manifest");
  stats->add_option("manifest", manifest_path)->required()->check(CLI::ExistingFile);
  stats->callback([&] { std::cout << pl::stage_report(pl::CorpusManifest::load(manifest_path)); });

  // run
  fs::path config_path;
  bool check_only = false;
  auto* run = app.add_subcommand("run", "Run the full pipeline from a config file");
  run->add_option("--config", config_path)->required();
  run->add_flag("--check", check_only, "Validate the config and print it with defaults filled");
  run->callback([&] {
    const auto config = pl::validate_config(config_path);
    if (check_only) {
      std::cout << config.to_json() << "\n";
      return;
    }
    const auto manifest = pl::run_pipeline(config, {workers});
    std::cout << "generation " << (config.output_dir / manifest.generation).string() << "\n"
              << pl::stage_report(manifest);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const pl::PipelineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.quarantine_dir().empty()) std::cerr << "partial outputs kept in " << e.quarantine_dir().string() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
