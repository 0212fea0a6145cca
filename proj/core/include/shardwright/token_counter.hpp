#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>

namespace shardwright {

/// Counts the "tokens" shown in stage reports.
class TokenCounter {
 public:
  virtual ~TokenCounter() = default;
  virtual std::size_t count(std::string_view text) const = 0;
  virtual std::string name() const = 0;
};

/// UAX-29 words containing a letter or digit.
class WordTokenCounter final : public TokenCounter {
 public:
  std::size_t count(std::string_view text) const override;
  std::string name() const override { return "words"; }
};

/// Greedy longest-match subword counting against a WordPiece-style
/// vocabulary: pieces after the first carry the "##" prefix. A word that
/// cannot be covered counts as one unknown token.
class VocabularyTokenCounter final : public TokenCounter {
 public:
  explicit VocabularyTokenCounter(std::unordered_set<std::string> vocabulary, std::string label = "vocabulary");
  /// One token per line.
  static VocabularyTokenCounter load(const std::filesystem::path& path);

  std::size_t count(std::string_view text) const override;
  std::size_t count_word(std::string_view word) const;
  std::string name() const override { return label_; }

 private:
  std::unordered_set<std::string> vocab_;
  std::size_t max_piece_bytes_ = 0;
  std::string label_;
};

std::unique_ptr<TokenCounter> make_token_counter(const std::filesystem::path& vocabulary = {});

}  // namespace shardwright
