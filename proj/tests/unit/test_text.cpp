#include <gtest/gtest.h>

#include "shardwright/hash.hpp"
#include "shardwright/text.hpp"

namespace text = shardwright::text;

TEST(Utf8, ValidInputPassesThrough) {
  const std::string s = "Olá, coração! 日本 😀";
  EXPECT_TRUE(text::is_valid_utf8(s));
  EXPECT_EQ(text::decode_utf8_lossy(s), s);
}

TEST(Utf8, OneInvalidByteBecomesOneReplacement) {
  const std::string s = "ab\xff" "cd";
  const auto out = text::decode_utf8_lossy(s);
  EXPECT_EQ(out, "ab\xEF\xBF\xBD" "cd");
  EXPECT_TRUE(text::is_valid_utf8(out));
}

TEST(Utf8, TruncatedSequenceIsOneMaximalSubpart) {
  // E2 82 is a valid prefix of a 3-byte sequence cut short.
  EXPECT_EQ(text::decode_utf8_lossy("x\xE2\x82y"), "x\xEF\xBF\xBDy");
  // Overlong and surrogate encodings are rejected byte by byte.
  EXPECT_EQ(text::code_point_count(text::decode_utf8_lossy("\xC0\xAF")), 2u);
  EXPECT_EQ(text::code_point_count(text::decode_utf8_lossy("\xED\xA0\x80")), 3u);
}

TEST(Utf8, RandomBytesAlwaysDecodeToValidUtf8) {
  shardwright::SplitMix64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::string bytes(rng.uniform(64), '\0');
    for (auto& c : bytes) c = static_cast<char>(rng.next());
    EXPECT_TRUE(text::is_valid_utf8(text::decode_utf8_lossy(bytes)));
  }
}

TEST(Utf8, CodePointHelpers) {
  const std::string s = "aé😀b";
  EXPECT_EQ(text::code_point_count(s), 4u);
  EXPECT_EQ(text::byte_offset_of_code_point(s, 2), 3u);
  EXPECT_EQ(text::byte_offset_of_code_point(s, 4), s.size());
  EXPECT_EQ(text::to_utf8(text::to_u32(s)), s);
}

TEST(Words, UnicodeSegmentation) {
  const auto w = text::words("Olá mundo. Tudo bem?");
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w[0], "Olá");
  EXPECT_EQ(w[3], "bem");
}

TEST(Words, PunctuationOnlySegmentsAreNotWords) {
  EXPECT_EQ(text::word_count("... --- ### !!!"), 0u);
  EXPECT_EQ(text::word_count("R$ 3,50 em 2022"), 4u);  // "R", "3,50", "em", "2022"
  EXPECT_EQ(text::word_count(""), 0u);
}

TEST(Words, KeepsNonAsciiLetters) {
  EXPECT_EQ(text::word_count("ação coração pão"), 3u);
  EXPECT_EQ(text::word_count("naïve café"), 2u);
}

TEST(Lowercase, FullUnicode) {
  EXPECT_EQ(text::to_lower("ÁGUA Coração ÇÃO"), "água coração ção");
  EXPECT_EQ(text::to_lower("ABC"), "abc");
}

TEST(Whitespace, CollapsesRuns) {
  EXPECT_EQ(text::collapse_whitespace("a  \t\n b"), "a b");
  EXPECT_EQ(text::collapse_whitespace("  a b  "), " a b ");
  EXPECT_EQ(text::collapse_whitespace("  a b  ", true), "a b");
  // U+00A0 no-break space and U+3000 ideographic space count as whitespace.
  EXPECT_EQ(text::collapse_whitespace("a\xC2\xA0\xE3\x80\x80" "b"), "a b");
}

TEST(Whitespace, Idempotent) {
  shardwright::SplitMix64 rng(3);
  const std::string alphabet[] = {"a", " ", "\t", "\n", "é", "  "};
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    for (std::size_t i = 0, n = rng.uniform(30); i < n; ++i) s += alphabet[rng.uniform(6)];
    const auto once = text::collapse_whitespace(s);
    EXPECT_EQ(text::collapse_whitespace(once), once);
  }
}

TEST(Lines, TrailingNewlineDoesNotAddLine) {
  EXPECT_EQ(text::lines("a\nb\n").size(), 2u);
  EXPECT_EQ(text::lines("a\n\nb").size(), 3u);
  EXPECT_TRUE(text::lines("").empty());
}

TEST(Hash, SplitMixUniformStaysInRange) {
  shardwright::SplitMix64 rng(11);
  std::size_t counts[7] = {};
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.uniform(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (const auto c : counts) EXPECT_NEAR(static_cast<double>(c), 10000.0, 500.0);
}

TEST(Hash, BytesHashDependsOnSeed) {
  EXPECT_EQ(shardwright::hash_bytes("abc"), shardwright::hash_bytes("abc"));
  EXPECT_NE(shardwright::hash_bytes("abc", 1), shardwright::hash_bytes("abc", 2));
}
