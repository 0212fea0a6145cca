#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shardwright::contamination {

struct ProbeParams {
  std::size_t substrings = 3;
  std::size_t length = 50;  // code points
  std::uint64_t seed = 0;
  /// Collapse whitespace runs on both sides before sampling and matching.
  bool normalize_whitespace = true;
  std::size_t workers = 1;
};

struct ContaminationProbe {
  std::string example_id;
  std::vector<std::string> substrings;
  std::uint64_t seed = 0;
};

/// Samples `n` substrings of `length` code points at uniform random offsets.
/// Texts shorter than `length` yield a single probe equal to the whole text.
/// Throws std::invalid_argument on empty text.
ContaminationProbe make_probe(std::string_view example_text, std::size_t n, std::size_t length, std::uint64_t seed,
                              bool normalize_whitespace = true, std::string example_id = {});

/// True iff every probe substring occurs in the document.
bool is_contaminated(std::string_view doc_text, const ContaminationProbe& probe, bool normalize_whitespace = true);

struct EvalExample {
  std::string example_id;
  std::string task;
  std::string text;
};

struct CorpusDoc {
  std::string id;
  std::string_view text;
};

struct TaskRate {
  std::size_t contaminated = 0;
  std::size_t total = 0;
  double rate() const { return total == 0 ? 0.0 : static_cast<double>(contaminated) / static_cast<double>(total); }
};

struct ContaminationReport {
  std::vector<std::pair<std::string, std::string>> pairs;  // (example_id, doc_id), sorted
  std::map<std::string, TaskRate> per_task;

  /// Set union of pairs; per-task contaminated counts are recomputed.
  void merge(const ContaminationReport& other, const std::vector<EvalExample>& examples);
  std::string to_json() const;
};

/// Seed used for the probe of a given example within a scan.
std::uint64_t example_seed(std::uint64_t base_seed, std::string_view example_id);

/// Multi-pattern substring index (Aho-Corasick over bytes).
class SubstringIndex {
 public:
  explicit SubstringIndex(const std::vector<std::string>& patterns);
  ~SubstringIndex();
  SubstringIndex(SubstringIndex&&) noexcept;
  SubstringIndex& operator=(SubstringIndex&&) noexcept;

  /// Ids (indices into the constructor's list) of all patterns occurring in
  /// `text`, sorted and unique.
  std::vector<std::size_t> find_all(std::string_view text) const;

 private:
  struct Automaton;
  std::unique_ptr<Automaton> automaton_;
};

/// Single pass over the corpus with a substring index built from every
/// example's probe.
ContaminationReport scan_corpus(const std::vector<CorpusDoc>& corpus, const std::vector<EvalExample>& examples,
                                const ProbeParams& params);

std::vector<EvalExample> load_eval_examples(const std::filesystem::path& path);

}  // namespace shardwright::contamination
