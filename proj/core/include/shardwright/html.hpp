#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shardwright::html {

/// Minimal DOM produced by the error-recovering parser below.
struct Node {
  enum class Kind { document, element, text, comment };

  Kind kind = Kind::document;
  std::string tag;   // lowercase element name
  std::string data;  // text (entity-decoded) or comment body
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<std::unique_ptr<Node>> children;
  Node* parent = nullptr;

  bool is_element(std::string_view name) const { return kind == Kind::element && tag == name; }
};

/// Parses any byte text into a tree. Never fails: stray end tags are dropped,
/// unclosed elements are closed at end of input, and the usual implied end
/// tags (p, li, dt/dd, tr, td/th, option) are inserted.
std::unique_ptr<Node> parse(std::string_view html);

/// Decodes character references (named, decimal and hex).
std::string decode_entities(std::string_view s);

bool is_void_element(std::string_view tag);
bool is_block_element(std::string_view tag);
/// Elements whose content is never document text.
bool is_non_text_element(std::string_view tag);

/// Pre-order visit of every node.
template <typename Fn>
void walk(const Node& node, Fn&& fn) {
  fn(node);
  for (const auto& c : node.children) walk(*c, fn);
}

}  // namespace shardwright::html
