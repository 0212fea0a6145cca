#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace shardwright::text {

inline constexpr char32_t kReplacementChar = 0xFFFD;

/// Decodes arbitrary bytes as UTF-8, replacing every maximal invalid subpart
/// with U+FFFD. Valid input is returned unchanged.
std::string decode_utf8_lossy(std::string_view bytes);

bool is_valid_utf8(std::string_view bytes);

/// Number of code points in valid UTF-8.
std::size_t code_point_count(std::string_view utf8);

/// Byte offset of the code point with the given index (or size() past the end).
std::size_t byte_offset_of_code_point(std::string_view utf8, std::size_t index);

std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

bool is_space(char32_t cp);
bool is_alpha(char32_t cp);
bool is_alnum(char32_t cp);

/// Full Unicode lowercase mapping.
std::string to_lower(std::string_view utf8);

/// Runs of Unicode whitespace become one ASCII space. Leading and trailing
/// whitespace is kept as a single space unless `trim` is set.
std::string collapse_whitespace(std::string_view utf8, bool trim = false);

/// Word tokens per UAX-29 word boundaries, keeping only segments that contain
/// at least one letter or digit.
std::vector<std::string_view> words(std::string_view utf8);

std::size_t word_count(std::string_view utf8);

/// Splits on '\n'; a trailing newline does not produce an empty last line.
std::vector<std::string_view> lines(std::string_view text);

std::string_view trim(std::string_view s);
std::string_view trim_right(std::string_view s);

bool iequals_ascii(std::string_view a, std::string_view b);
std::string ascii_lower(std::string_view s);

}  // namespace shardwright::text
