#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "shardwright/pipeline.hpp"

namespace shardwright::pipeline {

namespace {

std::string percent(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * f);
  return buf;
}

}  // namespace

std::string stage_report(const CorpusManifest& manifest) {
  const std::vector<std::string> header = {"crawl", "stage", "docs_in", "docs_out", "removed", "words_in",
                                           "words_out"};
  std::vector<std::vector<std::string>> rows;
  // Group by crawl in order of first appearance; stages keep execution order.
  std::vector<std::string> crawls;
  for (const auto& s : manifest.stages) {
    if (std::find(crawls.begin(), crawls.end(), s.crawl_id) == crawls.end()) crawls.push_back(s.crawl_id);
  }
  for (const auto& crawl : crawls) {
    for (const auto& s : manifest.stages) {
      if (s.crawl_id != crawl) continue;
      rows.push_back({s.crawl_id, s.stage, std::to_string(s.docs_in), std::to_string(s.docs_out),
                      percent(s.removal_fraction()), std::to_string(s.words_in), std::to_string(s.words_out)});
    }
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out += "  ";
      const std::string pad(width[c] - cells[c].size(), ' ');
      out += c < 2 ? cells[c] + pad : pad + cells[c];  // text left, numbers right
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string table = line(header);
  for (const auto& r : rows) table += line(r);
  return table;
}

}  // namespace shardwright::pipeline
