#include "shardwright/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

#include "shardwright/text.hpp"

namespace shardwright::html {

namespace {

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_html_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> table = {
      {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},       {"quot", U'"'},
      {"apos", U'\''},    {"nbsp", 0xA0},     {"iexcl", 0xA1},    {"cent", 0xA2},
      {"pound", 0xA3},    {"curren", 0xA4},   {"yen", 0xA5},      {"brvbar", 0xA6},
      {"sect", 0xA7},     {"uml", 0xA8},      {"copy", 0xA9},     {"ordf", 0xAA},
      {"laquo", 0xAB},    {"not", 0xAC},      {"shy", 0xAD},      {"reg", 0xAE},
      {"macr", 0xAF},     {"deg", 0xB0},      {"plusmn", 0xB1},   {"sup2", 0xB2},
      {"sup3", 0xB3},     {"acute", 0xB4},    {"micro", 0xB5},    {"para", 0xB6},
      {"middot", 0xB7},   {"cedil", 0xB8},    {"sup1", 0xB9},     {"ordm", 0xBA},
      {"raquo", 0xBB},    {"frac14", 0xBC},   {"frac12", 0xBD},   {"frac34", 0xBE},
      {"iquest", 0xBF},   {"Agrave", 0xC0},   {"Aacute", 0xC1},   {"Acirc", 0xC2},
      {"Atilde", 0xC3},   {"Auml", 0xC4},     {"Aring", 0xC5},    {"AElig", 0xC6},
      {"Ccedil", 0xC7},   {"Egrave", 0xC8},   {"Eacute", 0xC9},   {"Ecirc", 0xCA},
      {"Euml", 0xCB},     {"Igrave", 0xCC},   {"Iacute", 0xCD},   {"Icirc", 0xCE},
      {"Iuml", 0xCF},     {"ETH", 0xD0},      {"Ntilde", 0xD1},   {"Ograve", 0xD2},
      {"Oacute", 0xD3},   {"Ocirc", 0xD4},    {"Otilde", 0xD5},   {"Ouml", 0xD6},
      {"times", 0xD7},    {"Oslash", 0xD8},   {"Ugrave", 0xD9},   {"Uacute", 0xDA},
      {"Ucirc", 0xDB},    {"Uuml", 0xDC},     {"Yacute", 0xDD},   {"THORN", 0xDE},
      {"szlig", 0xDF},    {"agrave", 0xE0},   {"aacute", 0xE1},   {"acirc", 0xE2},
      {"atilde", 0xE3},   {"auml", 0xE4},     {"aring", 0xE5},    {"aelig", 0xE6},
      {"ccedil", 0xE7},   {"egrave", 0xE8},   {"eacute", 0xE9},   {"ecirc", 0xEA},
      {"euml", 0xEB},     {"igrave", 0xEC},   {"iacute", 0xED},   {"icirc", 0xEE},
      {"iuml", 0xEF},     {"eth", 0xF0},      {"ntilde", 0xF1},   {"ograve", 0xF2},
      {"oacute", 0xF3},   {"ocirc", 0xF4},    {"otilde", 0xF5},   {"ouml", 0xF6},
      {"divide", 0xF7},   {"oslash", 0xF8},   {"ugrave", 0xF9},   {"uacute", 0xFA},
      {"ucirc", 0xFB},    {"uuml", 0xFC},     {"yacute", 0xFD},   {"thorn", 0xFE},
      {"yuml", 0xFF},     {"ndash", 0x2013},  {"mdash", 0x2014},  {"lsquo", 0x2018},
      {"rsquo", 0x2019},  {"sbquo", 0x201A},  {"ldquo", 0x201C},  {"rdquo", 0x201D},
      {"bdquo", 0x201E},  {"bull", 0x2022},   {"hellip", 0x2026}, {"euro", 0x20AC},
      {"trade", 0x2122},  {"larr", 0x2190},   {"rarr", 0x2192},   {"ensp", 0x2002},
      {"emsp", 0x2003},   {"thinsp", 0x2009}, {"zwnj", 0x200C},   {"zwj", 0x200D},
  };
  return table;
}

const std::unordered_set<std::string_view> kVoid = {
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "source", "track", "wbr",
};

const std::unordered_set<std::string_view> kBlock = {
    "address", "article", "aside",  "blockquote", "body",   "br",     "caption", "center",   "dd",
    "details", "dialog",  "dir",    "div",        "dl",     "dt",     "fieldset", "figcaption", "figure",
    "footer",  "form",    "h1",     "h2",         "h3",     "h4",     "h5",      "h6",       "head",
    "header",  "hgroup",  "hr",     "html",       "li",     "main",   "menu",    "nav",      "noscript",
    "ol",      "option",  "p",      "pre",        "section", "summary", "table",  "tbody",    "td",
    "tfoot",   "th",      "thead",  "title",      "tr",     "ul",     "legend",  "textarea", "select",
};

// Elements whose start tag closes an open <p>.
const std::unordered_set<std::string_view> kClosesP = {
    "address", "article", "aside", "blockquote", "center", "details", "dialog", "dir", "div",
    "dl",      "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2", "h3", "h4",
    "h5",      "h6",      "header", "hgroup", "hr", "main", "menu", "nav", "ol", "p", "pre",
    "section", "summary", "table", "ul", "li", "dd", "dt",
};

const std::unordered_set<std::string_view> kRawText = {"script", "style", "xmp", "iframe", "noembed", "noframes"};
const std::unordered_set<std::string_view> kEscapableRaw = {"title", "textarea"};

class TreeBuilder {
 public:
  TreeBuilder() : root_(std::make_unique<Node>()) { stack_.push_back(root_.get()); }

  void text(std::string s) {
    if (s.empty()) return;
    Node* cur = stack_.back();
    if (!cur->children.empty() && cur->children.back()->kind == Node::Kind::text) {
      cur->children.back()->data += s;
      return;
    }
    auto n = std::make_unique<Node>();
    n->kind = Node::Kind::text;
    n->data = std::move(s);
    append(std::move(n));
  }

  void comment(std::string s) {
    auto n = std::make_unique<Node>();
    n->kind = Node::Kind::comment;
    n->data = std::move(s);
    append(std::move(n));
  }

  void start_tag(std::string tag, std::vector<std::pair<std::string, std::string>> attrs, bool self_closing) {
    apply_implied_end_tags(tag);
    auto n = std::make_unique<Node>();
    n->kind = Node::Kind::element;
    n->tag = tag;
    n->attributes = std::move(attrs);
    Node* raw = append(std::move(n));
    if (!kVoid.contains(tag) && !self_closing) stack_.push_back(raw);
  }

  void end_tag(std::string_view tag) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == tag) {
        stack_.resize(i);
        return;
      }
    }
  }

  std::unique_ptr<Node> finish() { return std::move(root_); }

 private:
  Node* append(std::unique_ptr<Node> n) {
    Node* parent = stack_.back();
    n->parent = parent;
    parent->children.push_back(std::move(n));
    return parent->children.back().get();
  }

  // Closes the innermost open `tag` if it is found before any of `barriers`.
  void close_if_open(std::string_view tag, std::initializer_list<std::string_view> barriers) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      const auto& t = stack_[i]->tag;
      if (t == tag) {
        stack_.resize(i);
        return;
      }
      if (std::find(barriers.begin(), barriers.end(), t) != barriers.end()) return;
    }
  }

  void apply_implied_end_tags(std::string_view tag) {
    if (kClosesP.contains(tag)) close_if_open("p", {"button", "table", "td", "th", "li", "div", "article", "section"});
    if (tag == "li") close_if_open("li", {"ul", "ol", "menu"});
    if (tag == "dt" || tag == "dd") {
      close_if_open("dt", {"dl"});
      close_if_open("dd", {"dl"});
    }
    if (tag == "tr") close_if_open("tr", {"table", "tbody", "thead", "tfoot"});
    if (tag == "td" || tag == "th") {
      close_if_open("td", {"tr", "table"});
      close_if_open("th", {"tr", "table"});
    }
    if (tag == "option") close_if_open("option", {"select", "datalist"});
  }

  std::unique_ptr<Node> root_;
  std::vector<Node*> stack_;
};

std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
  if (needle.empty()) return from;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    if (text::iequals_ascii(hay.substr(i, needle.size()), needle)) return i;
  }
  return std::string_view::npos;
}

}  // namespace

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto amp = s.find('&', i);
    if (amp == std::string_view::npos) {
      out.append(s.substr(i));
      break;
    }
    out.append(s.substr(i, amp - i));
    i = amp;
    std::size_t j = amp + 1;
    if (j < s.size() && s[j] == '#') {
      ++j;
      int base = 10;
      if (j < s.size() && (s[j] == 'x' || s[j] == 'X')) {
        base = 16;
        ++j;
      }
      std::size_t k = j;
      while (k < s.size() && k - j < 8 &&
             (std::isdigit(static_cast<unsigned char>(s[k])) ||
              (base == 16 && std::isxdigit(static_cast<unsigned char>(s[k]))))) {
        ++k;
      }
      if (k == j) {
        out.push_back('&');
        i = amp + 1;
        continue;
      }
      std::uint32_t cp = 0;
      std::from_chars(s.data() + j, s.data() + k, cp, base);
      if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = text::kReplacementChar;
      text::append_utf8(out, static_cast<char32_t>(cp));
      i = (k < s.size() && s[k] == ';') ? k + 1 : k;
      continue;
    }
    std::size_t k = j;
    while (k < s.size() && k - j < 10 && std::isalnum(static_cast<unsigned char>(s[k]))) ++k;
    if (k < s.size() && s[k] == ';') {
      const auto& table = named_entities();
      if (const auto it = table.find(s.substr(j, k - j)); it != table.end()) {
        text::append_utf8(out, it->second);
        i = k + 1;
        continue;
      }
    }
    out.push_back('&');
    i = amp + 1;
  }
  return out;
}

bool is_void_element(std::string_view tag) { return kVoid.contains(tag); }
bool is_block_element(std::string_view tag) { return kBlock.contains(tag); }
bool is_non_text_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "template";
}

std::unique_ptr<Node> parse(std::string_view s) {
  TreeBuilder tb;
  std::size_t i = 0;
  std::string pending_text;
  auto flush_text = [&] {
    if (!pending_text.empty()) {
      tb.text(decode_entities(pending_text));
      pending_text.clear();
    }
  };

  while (i < s.size()) {
    if (s[i] != '<') {
      const auto lt = s.find('<', i);
      const auto end = lt == std::string_view::npos ? s.size() : lt;
      pending_text.append(s.substr(i, end - i));
      i = end;
      continue;
    }
    // s[i] == '<'
    if (s.substr(i, 4) == "<!--") {
      flush_text();
      const auto close = s.find("-->", i + 4);
      const auto end = close == std::string_view::npos ? s.size() : close;
      tb.comment(std::string(s.substr(i + 4, end - (i + 4))));
      i = close == std::string_view::npos ? s.size() : close + 3;
      continue;
    }
    if (i + 1 < s.size() && (s[i + 1] == '!' || s[i + 1] == '?')) {
      flush_text();
      const auto close = s.find('>', i + 2);
      const auto end = close == std::string_view::npos ? s.size() : close;
      tb.comment(std::string(s.substr(i + 2, end - (i + 2))));
      i = close == std::string_view::npos ? s.size() : close + 1;
      continue;
    }
    if (i + 2 < s.size() && s[i + 1] == '/' && is_ascii_alpha(s[i + 2])) {
      flush_text();
      std::size_t k = i + 2;
      while (k < s.size() && !is_html_space(s[k]) && s[k] != '/' && s[k] != '>') ++k;
      const auto tag = text::ascii_lower(s.substr(i + 2, k - (i + 2)));
      const auto close = s.find('>', k);
      i = close == std::string_view::npos ? s.size() : close + 1;
      tb.end_tag(tag);
      continue;
    }
    if (i + 1 < s.size() && is_ascii_alpha(s[i + 1])) {
      flush_text();
      std::size_t k = i + 1;
      while (k < s.size() && !is_html_space(s[k]) && s[k] != '/' && s[k] != '>') ++k;
      auto tag = text::ascii_lower(s.substr(i + 1, k - (i + 1)));
      std::vector<std::pair<std::string, std::string>> attrs;
      bool self_closing = false;
      while (k < s.size() && s[k] != '>') {
        if (is_html_space(s[k])) {
          ++k;
          continue;
        }
        if (s[k] == '/') {
          self_closing = k + 1 < s.size() && s[k + 1] == '>';
          ++k;
          continue;
        }
        std::size_t n0 = k;
        while (k < s.size() && !is_html_space(s[k]) && s[k] != '/' && s[k] != '>' && s[k] != '=') ++k;
        if (k == n0) {
          ++k;
          continue;
        }
        auto name = text::ascii_lower(s.substr(n0, k - n0));
        std::string value;
        std::size_t m = k;
        while (m < s.size() && is_html_space(s[m])) ++m;
        if (m < s.size() && s[m] == '=') {
          ++m;
          while (m < s.size() && is_html_space(s[m])) ++m;
          if (m < s.size() && (s[m] == '"' || s[m] == '\'')) {
            const char q = s[m];
            const auto close = s.find(q, m + 1);
            const auto end = close == std::string_view::npos ? s.size() : close;
            value = decode_entities(s.substr(m + 1, end - (m + 1)));
            k = close == std::string_view::npos ? s.size() : close + 1;
          } else {
            std::size_t v0 = m;
            while (m < s.size() && !is_html_space(s[m]) && s[m] != '>') ++m;
            value = decode_entities(s.substr(v0, m - v0));
            k = m;
          }
        }
        attrs.emplace_back(std::move(name), std::move(value));
      }
      i = k < s.size() ? k + 1 : s.size();
      const bool raw = kRawText.contains(tag);
      const bool escapable = kEscapableRaw.contains(tag);
      tb.start_tag(tag, std::move(attrs), self_closing);
      if ((raw || escapable) && !self_closing) {
        const auto close = find_ci(s, "</" + tag, i);
        const auto end = close == std::string_view::npos ? s.size() : close;
        const auto body = s.substr(i, end - i);
        tb.text(escapable ? decode_entities(body) : std::string(body));
        tb.end_tag(tag);
        if (close == std::string_view::npos) {
          i = s.size();
        } else {
          const auto gt = s.find('>', close);
          i = gt == std::string_view::npos ? s.size() : gt + 1;
        }
      }
      continue;
    }
    pending_text.push_back('<');
    ++i;
  }
  flush_text();
  return tb.finish();
}

}  // namespace shardwright::html
