#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "shardwright/warc.hpp"

namespace shardwright::extraction {

enum class Mode { naive, content };

std::string_view to_string(Mode m);
Mode mode_from_string(std::string_view s);

struct ExtractionParams {
  Mode mode = Mode::content;
  /// Blocks whose linked share of characters exceeds this are dropped.
  double max_link_density = 0.5;
  /// Blocks shorter than this are dropped unless a sibling block is kept.
  std::size_t min_block_words = 5;
  std::set<std::string> boilerplate_tags = {"nav", "header", "footer", "aside", "form"};

  void validate() const;
};

struct DocumentText {
  std::string text;
  std::size_t word_count = 0;
  std::size_t char_count = 0;
};

/// One rendered line of the page together with the signals content mode
/// scores it on.
struct Block {
  std::string text;
  std::size_t words = 0;
  std::size_t chars = 0;       // non-space code points
  std::size_t link_chars = 0;  // non-space code points inside <a>
  bool in_boilerplate = false;
  const void* container = nullptr;  // parent of the owning block element

  double link_density() const { return chars == 0 ? 0.0 : static_cast<double>(link_chars) / chars; }
};

/// Renders the page into lines. Script, style and comment content is
/// dropped; block-level elements and <br> end a line; whitespace runs
/// collapse to one space; empty lines are discarded.
std::vector<Block> render_blocks(std::string_view html, const std::set<std::string>& boilerplate_tags);

DocumentText make_document_text(std::string text);

DocumentText extract_naive(const warc::RawPage& page);
DocumentText extract_naive(std::string_view html);

/// Keeps the blocks passing the boilerplate heuristics. Every output line is
/// also a line of extract_naive's output.
DocumentText extract_content(const warc::RawPage& page, const ExtractionParams& params);
DocumentText extract_content(std::string_view html, const ExtractionParams& params);

DocumentText extract(std::string_view html, const ExtractionParams& params);

}  // namespace shardwright::extraction
