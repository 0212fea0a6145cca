#include "shardwright/contamination.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "shardwright/hash.hpp"
#include "shardwright/jsonl.hpp"
#include "shardwright/parallel.hpp"
#include "shardwright/text.hpp"

namespace shardwright::contamination {

namespace {

std::string prepare(std::string_view s, bool normalize, bool trim) {
  return normalize ? text::collapse_whitespace(s, trim) : std::string(s);
}

}  // namespace

ContaminationProbe make_probe(std::string_view example_text, std::size_t n, std::size_t length, std::uint64_t seed,
                              bool normalize_whitespace, std::string example_id) {
  if (length == 0) throw std::invalid_argument("probe length must be >= 1");
  const auto prepared = prepare(example_text, normalize_whitespace, /*trim=*/true);
  if (prepared.empty()) throw std::invalid_argument("cannot probe an empty example");
  ContaminationProbe probe;
  probe.example_id = std::move(example_id);
  probe.seed = seed;
  const auto cps = text::to_u32(prepared);
  if (cps.size() < length) {
    probe.substrings.push_back(prepared);
    return probe;
  }
  SplitMix64 rng(seed);
  const std::size_t span = cps.size() - length + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto offset = static_cast<std::size_t>(rng.uniform(span));
    probe.substrings.push_back(text::to_utf8(std::u32string_view(cps).substr(offset, length)));
  }
  return probe;
}

bool is_contaminated(std::string_view doc_text, const ContaminationProbe& probe, bool normalize_whitespace) {
  if (probe.substrings.empty()) return false;
  const auto doc = prepare(doc_text, normalize_whitespace, /*trim=*/false);
  return std::all_of(probe.substrings.begin(), probe.substrings.end(),
                     [&](const std::string& s) { return doc.find(s) != std::string::npos; });
}

std::uint64_t example_seed(std::uint64_t base_seed, std::string_view example_id) {
  return hash_combine(base_seed, hash_bytes(example_id));
}

struct SubstringIndex::Automaton {
  struct Node {
    std::vector<std::pair<unsigned char, std::uint32_t>> next;  // sorted by byte
    std::uint32_t fail = 0;
    std::uint32_t dict = 0;  // nearest suffix node that ends a pattern (0 = none)
    std::vector<std::uint32_t> outputs;
  };
  std::vector<Node> nodes;

  std::uint32_t child(std::uint32_t n, unsigned char c) const {
    const auto& nx = nodes[n].next;
    const auto it = std::lower_bound(nx.begin(), nx.end(), c,
                                     [](const auto& e, unsigned char v) { return e.first < v; });
    return (it != nx.end() && it->first == c) ? it->second : 0;
  }
};

SubstringIndex::SubstringIndex(const std::vector<std::string>& patterns) : automaton_(std::make_unique<Automaton>()) {
  auto& nodes = automaton_->nodes;
  nodes.emplace_back();
  for (std::uint32_t id = 0; id < patterns.size(); ++id) {
    std::uint32_t cur = 0;
    for (const char ch : patterns[id]) {
      const auto c = static_cast<unsigned char>(ch);
      auto nx = automaton_->child(cur, c);
      if (nx == 0) {
        nx = static_cast<std::uint32_t>(nodes.size());
        nodes.emplace_back();
        auto& edges = nodes[cur].next;
        edges.insert(std::lower_bound(edges.begin(), edges.end(), c,
                                      [](const auto& e, unsigned char v) { return e.first < v; }),
                     {c, nx});
      }
      cur = nx;
    }
    nodes[cur].outputs.push_back(id);
  }
  std::deque<std::uint32_t> queue;
  for (const auto& [c, nx] : nodes[0].next) queue.push_back(nx);
  while (!queue.empty()) {
    const auto n = queue.front();
    queue.pop_front();
    for (const auto& [c, nx] : nodes[n].next) {
      std::uint32_t f = nodes[n].fail;
      while (f != 0 && automaton_->child(f, c) == 0) f = nodes[f].fail;
      std::uint32_t target = automaton_->child(f, c);
      if (target == nx) target = 0;
      nodes[nx].fail = target;
      nodes[nx].dict = nodes[target].outputs.empty() ? nodes[target].dict : target;
      queue.push_back(nx);
    }
  }
}

SubstringIndex::~SubstringIndex() = default;
SubstringIndex::SubstringIndex(SubstringIndex&&) noexcept = default;
SubstringIndex& SubstringIndex::operator=(SubstringIndex&&) noexcept = default;

std::vector<std::size_t> SubstringIndex::find_all(std::string_view t) const {
  const auto& a = *automaton_;
  std::vector<std::size_t> found;
  std::uint32_t cur = 0;
  for (const char ch : t) {
    const auto c = static_cast<unsigned char>(ch);
    while (cur != 0 && a.child(cur, c) == 0) cur = a.nodes[cur].fail;
    cur = a.child(cur, c);
    for (std::uint32_t n = a.nodes[cur].outputs.empty() ? a.nodes[cur].dict : cur; n != 0; n = a.nodes[n].dict) {
      found.insert(found.end(), a.nodes[n].outputs.begin(), a.nodes[n].outputs.end());
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

void ContaminationReport::merge(const ContaminationReport& other, const std::vector<EvalExample>& examples) {
  std::set<std::pair<std::string, std::string>> all(pairs.begin(), pairs.end());
  all.insert(other.pairs.begin(), other.pairs.end());
  pairs.assign(all.begin(), all.end());
  std::set<std::string> flagged;
  for (const auto& [ex, doc] : pairs) flagged.insert(ex);
  per_task.clear();
  for (const auto& e : examples) {
    auto& r = per_task[e.task];
    ++r.total;
    r.contaminated += flagged.contains(e.example_id);
  }
}

std::string ContaminationReport::to_json() const {
  nlohmann::json j;
  auto& p = j["contaminated_pairs"] = nlohmann::json::array();
  for (const auto& [ex, doc] : pairs) p.push_back({{"example_id", ex}, {"doc_id", doc}});
  auto& t = j["per_task"] = nlohmann::json::object();
  for (const auto& [task, r] : per_task) {
    t[task] = {{"contaminated", r.contaminated}, {"total", r.total}, {"rate", r.rate()}};
  }
  return j.dump(2);
}

ContaminationReport scan_corpus(const std::vector<CorpusDoc>& corpus, const std::vector<EvalExample>& examples,
                                const ProbeParams& params) {
  // Pattern dedup across examples; each example keeps the set of pattern ids it needs.
  std::vector<std::string> patterns;
  std::unordered_map<std::string, std::size_t> pattern_ids;
  std::vector<std::vector<std::size_t>> needs(examples.size());
  std::vector<std::vector<std::size_t>> owners;
  for (std::size_t e = 0; e < examples.size(); ++e) {
    const auto probe = make_probe(examples[e].text, params.substrings, params.length,
                                  example_seed(params.seed, examples[e].example_id), params.normalize_whitespace,
                                  examples[e].example_id);
    for (const auto& s : probe.substrings) {
      auto [it, inserted] = pattern_ids.try_emplace(s, patterns.size());
      if (inserted) {
        patterns.push_back(s);
        owners.emplace_back();
      }
      needs[e].push_back(it->second);
    }
    std::sort(needs[e].begin(), needs[e].end());
    needs[e].erase(std::unique(needs[e].begin(), needs[e].end()), needs[e].end());
    for (const auto p : needs[e]) owners[p].push_back(e);
  }
  const SubstringIndex index(patterns);

  std::vector<std::vector<std::pair<std::string, std::string>>> per_doc(corpus.size());
  parallel_for(corpus.size(), params.workers, [&](std::size_t d) {
    const auto doc = prepare(corpus[d].text, params.normalize_whitespace, /*trim=*/false);
    const auto matched = index.find_all(doc);
    if (matched.empty()) return;
    std::set<std::size_t> candidates;
    for (const auto p : matched) candidates.insert(owners[p].begin(), owners[p].end());
    for (const auto e : candidates) {
      if (std::includes(matched.begin(), matched.end(), needs[e].begin(), needs[e].end())) {
        per_doc[d].emplace_back(examples[e].example_id, corpus[d].id);
      }
    }
  });

  ContaminationReport report;
  for (auto& v : per_doc) report.pairs.insert(report.pairs.end(), v.begin(), v.end());
  std::sort(report.pairs.begin(), report.pairs.end());
  report.pairs.erase(std::unique(report.pairs.begin(), report.pairs.end()), report.pairs.end());
  report.merge(ContaminationReport{}, examples);
  return report;
}

std::vector<EvalExample> load_eval_examples(const std::filesystem::path& path) {
  io::JsonlReader reader(path);
  std::vector<EvalExample> out;
  std::string line;
  while (reader.next(line)) {
    const auto j = nlohmann::json::parse(line);
    out.push_back({j.at("example_id").get<std::string>(), j.value("task", std::string("unknown")),
                   j.at("text").get<std::string>()});
  }
  return out;
}

}  // namespace shardwright::contamination
