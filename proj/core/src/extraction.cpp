#include "shardwright/extraction.hpp"

#include <stdexcept>

#include "shardwright/html.hpp"
#include "shardwright/text.hpp"

namespace shardwright::extraction {

namespace {

struct Renderer {
  const std::set<std::string>* boilerplate;
  std::vector<Block> blocks;

  std::string line;
  std::size_t link_chars = 0;
  std::size_t boilerplate_depth = 0;
  std::size_t link_depth = 0;
  std::vector<const html::Node*> block_stack;

  void flush() {
    auto collapsed = text::collapse_whitespace(line, /*trim=*/true);
    if (!collapsed.empty()) {
      Block b;
      b.text = std::move(collapsed);
      b.words = text::word_count(b.text);
      std::size_t chars = 0;
      for (char32_t cp : text::to_u32(b.text)) {
        if (!text::is_space(cp)) ++chars;
      }
      b.chars = chars;
      b.link_chars = std::min(link_chars, chars);
      b.in_boilerplate = boilerplate_depth > 0;
      const html::Node* owner = block_stack.empty() ? nullptr : block_stack.back();
      b.container = owner ? static_cast<const void*>(owner->parent) : nullptr;
      blocks.push_back(std::move(b));
    }
    line.clear();
    link_chars = 0;
  }

  void visit(const html::Node& n) {
    switch (n.kind) {
      case html::Node::Kind::comment:
        return;
      case html::Node::Kind::text: {
        line += n.data;
        if (link_depth > 0) {
          for (char32_t cp : text::to_u32(n.data)) {
            if (!text::is_space(cp)) ++link_chars;
          }
        }
        return;
      }
      case html::Node::Kind::document:
        for (const auto& c : n.children) visit(*c);
        flush();
        return;
      case html::Node::Kind::element:
        break;
    }
    if (html::is_non_text_element(n.tag)) return;
    if (n.tag == "br") {
      flush();
      return;
    }
    const bool block = html::is_block_element(n.tag);
    const bool boiler = boilerplate->contains(n.tag);
    const bool link = n.tag == "a";
    if (block) {
      flush();
      block_stack.push_back(&n);
    }
    if (boiler) ++boilerplate_depth;
    if (link) ++link_depth;
    for (const auto& c : n.children) visit(*c);
    if (link) --link_depth;
    if (block) flush();
    if (boiler) --boilerplate_depth;
    if (block) block_stack.pop_back();
  }
};

std::string join_lines(const std::vector<const Block*>& kept) {
  std::string out;
  for (const auto* b : kept) {
    if (!out.empty()) out.push_back('\n');
    out += b->text;
  }
  return out;
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::naive ? "naive" : "content"; }

Mode mode_from_string(std::string_view s) {
  if (s == "naive") return Mode::naive;
  if (s == "content") return Mode::content;
  throw std::invalid_argument("unknown extraction mode: " + std::string(s));
}

void ExtractionParams::validate() const {
  if (!(max_link_density >= 0.0 && max_link_density <= 1.0)) {
    throw std::invalid_argument("max_link_density must be in [0,1]");
  }
}

std::vector<Block> render_blocks(std::string_view html_text, const std::set<std::string>& boilerplate_tags) {
  const auto dom = html::parse(html_text);
  Renderer r{&boilerplate_tags, {}, {}, 0, 0, 0, {}};
  r.visit(*dom);
  return std::move(r.blocks);
}

DocumentText make_document_text(std::string text) {
  DocumentText d;
  d.word_count = text::word_count(text);
  d.char_count = text::code_point_count(text);
  d.text = std::move(text);
  return d;
}

DocumentText extract_naive(std::string_view html_text) {
  static const std::set<std::string> kNone;
  const auto blocks = render_blocks(html_text, kNone);
  std::vector<const Block*> all;
  all.reserve(blocks.size());
  for (const auto& b : blocks) all.push_back(&b);
  return make_document_text(join_lines(all));
}

DocumentText extract_naive(const warc::RawPage& page) { return extract_naive(page.html); }

DocumentText extract_content(std::string_view html_text, const ExtractionParams& params) {
  params.validate();
  const auto blocks = render_blocks(html_text, params.boilerplate_tags);
  const auto n = blocks.size();

  // Structural gate shared by every block; the length gate is applied on top.
  std::vector<bool> clean(n), strong(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& b = blocks[i];
    clean[i] = !b.in_boilerplate && b.link_density() <= params.max_link_density;
    strong[i] = clean[i] && b.words >= params.min_block_words;
  }
  std::vector<const Block*> kept;
  for (std::size_t i = 0; i < n; ++i) {
    bool keep = strong[i];
    if (!keep && clean[i]) {
      const bool prev = i > 0 && strong[i - 1] && blocks[i - 1].container == blocks[i].container;
      const bool next = i + 1 < n && strong[i + 1] && blocks[i + 1].container == blocks[i].container;
      keep = prev || next;
    }
    if (keep) kept.push_back(&blocks[i]);
  }
  return make_document_text(join_lines(kept));
}

DocumentText extract_content(const warc::RawPage& page, const ExtractionParams& params) {
  return extract_content(page.html, params);
}

DocumentText extract(std::string_view html_text, const ExtractionParams& params) {
  return params.mode == Mode::naive ? extract_naive(html_text) : extract_content(html_text, params);
}

}  // namespace shardwright::extraction
