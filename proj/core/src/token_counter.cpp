#include "shardwright/token_counter.hpp"

#include <algorithm>
#include <stdexcept>

#include "shardwright/gzip.hpp"
#include "shardwright/text.hpp"

namespace shardwright {

std::size_t WordTokenCounter::count(std::string_view t) const { return text::word_count(t); }

VocabularyTokenCounter::VocabularyTokenCounter(std::unordered_set<std::string> vocabulary, std::string label)
    : vocab_(std::move(vocabulary)), label_(std::move(label)) {
  if (vocab_.empty()) throw std::invalid_argument("empty vocabulary");
  for (const auto& v : vocab_) max_piece_bytes_ = std::max(max_piece_bytes_, v.size());
}

VocabularyTokenCounter VocabularyTokenCounter::load(const std::filesystem::path& path) {
  const auto bytes = io::read_file(path);
  std::unordered_set<std::string> vocab;
  for (const auto line : text::lines(bytes)) {
    const auto entry = text::trim(line);
    if (!entry.empty()) vocab.emplace(entry);
  }
  return VocabularyTokenCounter(std::move(vocab), "vocabulary:" + path.filename().string());
}

std::size_t VocabularyTokenCounter::count_word(std::string_view word) const {
  // Candidate ends must fall on code point boundaries.
  const auto boundary = [&](std::size_t i) {
    return i >= word.size() || (static_cast<unsigned char>(word[i]) & 0xC0) != 0x80;
  };
  std::size_t tokens = 0;
  std::size_t pos = 0;
  std::string piece;
  while (pos < word.size()) {
    const std::string_view prefix = pos == 0 ? "" : "##";
    std::size_t end = std::min(word.size(), pos + max_piece_bytes_);
    bool found = false;
    for (; end > pos; --end) {
      if (!boundary(end)) continue;
      piece.assign(prefix);
      piece.append(word.substr(pos, end - pos));
      if (vocab_.contains(piece)) {
        found = true;
        break;
      }
    }
    if (!found) return 1;
    ++tokens;
    pos = end;
  }
  return tokens;
}

std::size_t VocabularyTokenCounter::count(std::string_view t) const {
  std::size_t total = 0;
  for (const auto& w : text::words(t)) total += count_word(w);
  return total;
}

std::unique_ptr<TokenCounter> make_token_counter(const std::filesystem::path& vocabulary) {
  if (vocabulary.empty()) return std::make_unique<WordTokenCounter>();
  return std::make_unique<VocabularyTokenCounter>(VocabularyTokenCounter::load(vocabulary));
}

}  // namespace shardwright
