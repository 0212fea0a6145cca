#include "shardwright/text.hpp"

#include <memory>
#include <stdexcept>

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utext.h>

namespace shardwright::text {

namespace {

// Length of the valid UTF-8 sequence starting at `i`, or the length of the
// maximal invalid subpart (>= 1) as a negative number.
int classify_sequence(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return 1;
  int need = 0;
  unsigned char lo = 0x80, hi = 0xBF;
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    need = 1;
  } else if (b0 >= 0xE0 && b0 <= 0xEF) {
    need = 2;
    if (b0 == 0xE0) lo = 0xA0;
    if (b0 == 0xED) hi = 0x9F;
  } else if (b0 >= 0xF0 && b0 <= 0xF4) {
    need = 3;
    if (b0 == 0xF0) lo = 0x90;
    if (b0 == 0xF4) hi = 0x8F;
  } else {
    return -1;
  }
  for (int k = 1; k <= need; ++k) {
    if (i + k >= s.size()) return -k;
    const auto b = static_cast<unsigned char>(s[i + k]);
    const unsigned char l = (k == 1) ? lo : 0x80;
    const unsigned char h = (k == 1) ? hi : 0xBF;
    if (b < l || b > h) return -k;
  }
  return need + 1;
}

char32_t decode_at(std::string_view s, std::size_t i, int len) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  switch (len) {
    case 1:
      return b0;
    case 2:
      return ((b0 & 0x1Fu) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
    case 3:
      return ((b0 & 0x0Fu) << 12) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6) |
             (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
    default:
      return ((b0 & 0x07u) << 18) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12) |
             ((static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6) |
             (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
  }
}

icu::BreakIterator& word_iterator() {
  thread_local std::unique_ptr<icu::BreakIterator> it = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> bi(
        icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
    if (U_FAILURE(status) || !bi) {
      throw std::runtime_error(std::string("ICU word iterator: ") + u_errorName(status));
    }
    return bi;
  }();
  return *it;
}

}  // namespace

std::string decode_utf8_lossy(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const int len = classify_sequence(bytes, i);
    if (len > 0) {
      out.append(bytes.substr(i, static_cast<std::size_t>(len)));
      i += static_cast<std::size_t>(len);
    } else {
      append_utf8(out, kReplacementChar);
      i += static_cast<std::size_t>(-len);
    }
  }
  return out;
}

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    const int len = classify_sequence(bytes, i);
    if (len < 0) return false;
    i += static_cast<std::size_t>(len);
  }
  return true;
}

std::size_t code_point_count(std::string_view utf8) {
  std::size_t n = 0;
  for (char c : utf8) {
    if ((static_cast<unsigned char>(c) & 0xC0u) != 0x80u) ++n;
  }
  return n;
}

std::size_t byte_offset_of_code_point(std::string_view utf8, std::size_t index) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < utf8.size(); ++i) {
    if ((static_cast<unsigned char>(utf8[i]) & 0xC0u) != 0x80u) {
      if (seen == index) return i;
      ++seen;
    }
  }
  return utf8.size();
}

std::u32string to_u32(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    const int len = classify_sequence(utf8, i);
    if (len > 0) {
      out.push_back(decode_at(utf8, i, len));
      i += static_cast<std::size_t>(len);
    } else {
      out.push_back(kReplacementChar);
      i += static_cast<std::size_t>(-len);
    }
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    if (cp >= 0xD800 && cp <= 0xDFFF) cp = kReplacementChar;
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp <= 0x10FFFF) {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    append_utf8(out, kReplacementChar);
  }
}

std::string to_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0; }
bool is_alpha(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)) != 0; }
bool is_alnum(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)) != 0; }

std::string to_lower(std::string_view utf8) {
  bool ascii = true;
  for (char c : utf8) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return ascii_lower(utf8);
  auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  u.toLower(icu::Locale::getRoot());
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::string collapse_whitespace(std::string_view utf8, bool trim_ends) {
  std::string out;
  out.reserve(utf8.size());
  bool in_space = false;
  std::size_t i = 0;
  while (i < utf8.size()) {
    int len = classify_sequence(utf8, i);
    char32_t cp = kReplacementChar;
    std::size_t step = 1;
    if (len > 0) {
      cp = decode_at(utf8, i, len);
      step = static_cast<std::size_t>(len);
    } else {
      step = static_cast<std::size_t>(-len);
    }
    if (is_space(cp)) {
      in_space = true;
    } else {
      if (in_space && !(trim_ends && out.empty())) out.push_back(' ');
      in_space = false;
      if (len > 0) {
        out.append(utf8.substr(i, step));
      } else {
        append_utf8(out, kReplacementChar);
      }
    }
    i += step;
  }
  if (in_space && !trim_ends) out.push_back(' ');
  return out;
}

std::vector<std::string_view> words(std::string_view utf8) {
  std::vector<std::string_view> out;
  if (utf8.empty()) return out;
  UErrorCode status = U_ZERO_ERROR;
  UText* ut = utext_openUTF8(nullptr, utf8.data(), static_cast<int64_t>(utf8.size()), &status);
  if (U_FAILURE(status)) throw std::runtime_error("utext_openUTF8 failed");
  auto& bi = word_iterator();
  bi.setText(ut, status);
  if (U_FAILURE(status)) {
    utext_close(ut);
    throw std::runtime_error("BreakIterator::setText failed");
  }
  int32_t start = bi.first();
  for (int32_t end = bi.next(); end != icu::BreakIterator::DONE; start = end, end = bi.next()) {
    const auto seg = utf8.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(end - start));
    std::size_t i = 0;
    bool keep = false;
    while (i < seg.size()) {
      const int len = classify_sequence(seg, i);
      if (len > 0) {
        if (is_alnum(decode_at(seg, i, len))) {
          keep = true;
          break;
        }
        i += static_cast<std::size_t>(len);
      } else {
        i += static_cast<std::size_t>(-len);
      }
    }
    if (keep) out.push_back(seg);
  }
  // Detach the iterator from the UText before closing it.
  bi.setText(icu::UnicodeString());
  utext_close(ut);
  return out;
}

std::size_t word_count(std::string_view utf8) { return words(utf8).size(); }

std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string_view trim_right(std::string_view s) {
  const auto e = s.find_last_not_of(" \t\r\n\f\v");
  if (e == std::string_view::npos) return {};
  return s.substr(0, e + 1);
}

bool iequals_ascii(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace shardwright::text
