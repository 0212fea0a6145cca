#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "rule_fixtures.hpp"
#include "shardwright/rule_filters.hpp"

namespace f = shardwright::filters;
namespace t = shardwright::testing;

TEST(DocStats, WordsAndSentences) {
  const auto s = f::doc_stats("Olá mundo. Tudo bem?", {});
  EXPECT_EQ(s.word_count, 4u);
  EXPECT_EQ(s.sentence_count, 2u);
}

TEST(DocStats, MeanWordLength) {
  std::string text;
  for (int i = 0; i < 10; ++i) text += "abcdefghijkl ";
  EXPECT_DOUBLE_EQ(f::doc_stats(text, {}).mean_word_length, 12.0);
  // Code points, not bytes.
  EXPECT_DOUBLE_EQ(f::doc_stats("ação pão", {}).mean_word_length, 3.5);
}

TEST(DocStats, EllipsisLineFraction) {
  std::string text;
  for (int i = 0; i < 10; ++i) text += i < 4 ? "linha com reticências...\n" : "linha normal.\n";
  EXPECT_DOUBLE_EQ(f::doc_stats(text, {}).ellipsis_line_fraction, 0.4);
  EXPECT_DOUBLE_EQ(f::doc_stats("uma linha…  \noutra", {}).ellipsis_line_fraction, 0.5);
}

TEST(DocStats, SymbolRatioCountsHashAndEllipses) {
  const auto s = f::doc_stats("um dois # três... quatro… cinco ###", {});
  EXPECT_EQ(s.word_count, 5u);
  EXPECT_DOUBLE_EQ(s.symbol_to_word_ratio, 6.0 / 5.0);
}

TEST(DocStats, StopwordsCountOccurrences) {
  EXPECT_EQ(f::doc_stats("O gato e o cão e a ave", {}).stopword_count, 5u);
  EXPECT_EQ(f::doc_stats("Gatos cães aves", {}).stopword_count, 0u);
}

TEST(DocStats, EmptyTextIsZeros) {
  const auto s = f::doc_stats("", {});
  EXPECT_EQ(s.word_count, 0u);
  EXPECT_EQ(s.sentence_count, 0u);
  EXPECT_DOUBLE_EQ(s.mean_word_length, 0.0);
  EXPECT_DOUBLE_EQ(s.alpha_word_fraction, 0.0);
}

TEST(DocStats, FractionsStayInRangeOnArbitraryBytes) {
  shardwright::SplitMix64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string bytes(rng.uniform(200), '\0');
    for (auto& c : bytes) c = static_cast<char>(rng.next() % 128);
    const auto s = f::doc_stats(bytes, {});
    EXPECT_GE(s.ellipsis_line_fraction, 0.0);
    EXPECT_LE(s.ellipsis_line_fraction, 1.0);
    EXPECT_GE(s.alpha_word_fraction, 0.0);
    EXPECT_LE(s.alpha_word_fraction, 1.0);
    EXPECT_GE(s.mean_word_length, 0.0);
  }
}

TEST(Sentences, SplitOnTerminalPunctuationFollowedBySpace) {
  EXPECT_EQ(f::count_sentences("Um. Dois! Três? Quatro"), 4u);
  EXPECT_EQ(f::count_sentences("R$ 3.50 é o preço. Fim."), 2u);
  EXPECT_EQ(f::count_sentences("... !!! ???"), 0u);
}

TEST(Rules, StopwordListShipsSixtyEntries) {
  EXPECT_EQ(f::RuleParams::default_stopwords().size(), 60u);
  EXPECT_EQ(f::load_word_list(SHARDWRIGHT_SOURCE_DATA "/stopwords_pt.txt"), f::RuleParams::default_stopwords());
}

TEST(Rules, WordListLoaderNormalizes) {
  const auto dir = t::temp_dir("wordlist");
  t::write_bytes(dir / "w.txt", "# comment\n\nPalavrão\n  Duas   Palavras \n");
  EXPECT_EQ(f::load_word_list(dir / "w.txt"), (std::set<std::string>{"palavrão", "duas palavras"}));
}

TEST(Rules, MassiveWebExamples) {
  f::DocStats s;
  s.word_count = 49;
  s.mean_word_length = 5;
  s.alpha_word_fraction = 1.0;
  s.stopword_count = 3;
  auto v = f::massiveweb_verdict(s, {});
  EXPECT_FALSE(v.keep);
  EXPECT_EQ(v.violated_rules, (std::vector<std::string>{"word_count_low"}));

  s.word_count = 200;
  s.mean_word_length = 12;
  v = f::massiveweb_verdict(s, {});
  EXPECT_EQ(v.violated_rules, (std::vector<std::string>{"mean_wlen_high"}));

  s.mean_word_length = 5;
  s.alpha_word_fraction = 0.95;
  v = f::massiveweb_verdict(s, {});
  EXPECT_TRUE(v.keep);
  EXPECT_TRUE(v.violated_rules.empty());

  s.ellipsis_line_fraction = 0.31;
  EXPECT_FALSE(f::massiveweb_verdict(s, {}).keep);
  s.ellipsis_line_fraction = 0.30;
  EXPECT_TRUE(f::massiveweb_verdict(s, {}).keep);
}

TEST(Rules, C4Examples) {
  f::DocStats s;
  s.sentence_count = 3;
  EXPECT_TRUE(f::c4_verdict(s, {}).keep);
  s.contains_brace = true;
  EXPECT_EQ(f::c4_verdict(s, {}).violated_rules, (std::vector<std::string>{"contains_brace"}));
  s = {};
  s.sentence_count = 2;
  EXPECT_EQ(f::c4_verdict(s, {}).violated_rules, (std::vector<std::string>{"sentences_low"}));
  EXPECT_TRUE(f::doc_stats("Texto com Lorem IPSUM no meio", {}).contains_lorem_ipsum);
}

TEST(Rules, FixtureSuiteAgreesWithHandLabels) {
  const auto params = t::rule_fixture_params();
  const auto suite = t::rule_fixture_suite();
  ASSERT_EQ(suite.size(), 26u);
  std::set<std::string> rules_covered;
  for (const auto& fx : suite) {
    rules_covered.insert(fx.rule);
    const auto v = f::verdict(fx.text, f::RuleSet::both, params);
    EXPECT_EQ(v.keep, fx.keep) << fx.name;
    if (fx.keep) {
      EXPECT_TRUE(v.violated_rules.empty()) << fx.name;
    } else {
      EXPECT_EQ(v.violated_rules, std::vector<std::string>{fx.rule}) << fx.name;
    }
  }
  EXPECT_EQ(rules_covered.size(), 13u);
}

TEST(Rules, KeepIffNoViolations) {
  shardwright::SplitMix64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto text = t::prose(rng, rng.uniform(120));
    for (const auto rs : {f::RuleSet::massiveweb, f::RuleSet::c4, f::RuleSet::both}) {
      const auto v = f::verdict(text, rs, {});
      EXPECT_EQ(v.keep, v.violated_rules.empty());
    }
  }
}

TEST(ApplyFilters, NoneIsIdentity) {
  const std::vector<std::string_view> docs = {"a", "{", "lorem ipsum"};
  const auto r = f::apply_filters(docs, f::RuleSet::none, {});
  EXPECT_EQ(r.kept, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(r.report.removal_fraction(), 0.0);
}

TEST(ApplyFilters, PlantedViolatorsAreCounted) {
  shardwright::SplitMix64 rng(3);
  std::vector<std::string> docs;
  for (int i = 0; i < 60; ++i) docs.push_back(t::prose(rng, 80));
  for (int i = 0; i < 20; ++i) docs.push_back(t::prose(rng, 80) + " {x}");
  for (int i = 0; i < 20; ++i) docs.push_back(t::prose(rng, 30));
  std::vector<std::string_view> views(docs.begin(), docs.end());
  const auto r = f::apply_filters(views, f::RuleSet::both, {}, 3);
  EXPECT_EQ(r.report.docs_in, 100u);
  EXPECT_EQ(r.report.docs_out, 60u);
  EXPECT_NEAR(r.report.removal_fraction(), 0.40, 1e-12);
  EXPECT_EQ(r.report.rule_violations.at("contains_brace"), 20u);
  EXPECT_EQ(r.report.rule_violations.at("word_count_low"), 20u);
}

TEST(ApplyFilters, BothIsIntersection) {
  shardwright::SplitMix64 rng(4);
  std::vector<std::string> docs;
  for (int i = 0; i < 300; ++i) {
    auto d = t::prose(rng, rng.uniform(120));
    if (rng.uniform(5) == 0) d += " {";
    if (rng.uniform(7) == 0) d += " # # # # # # # # # #";
    docs.push_back(d);
  }
  std::vector<std::string_view> views(docs.begin(), docs.end());
  const auto mw = f::apply_filters(views, f::RuleSet::massiveweb, {}).kept;
  const auto c4 = f::apply_filters(views, f::RuleSet::c4, {}).kept;
  const auto both = f::apply_filters(views, f::RuleSet::both, {}).kept;
  std::vector<std::size_t> inter;
  std::set_intersection(mw.begin(), mw.end(), c4.begin(), c4.end(), std::back_inserter(inter));
  EXPECT_EQ(both, inter);
}

TEST(ApplyFilters, PermutingCorpusPermutesOutput) {
  shardwright::SplitMix64 rng(5);
  std::vector<std::string> docs;
  for (int i = 0; i < 50; ++i) docs.push_back(t::prose(rng, 20 + rng.uniform(80)));
  std::vector<std::string_view> views(docs.begin(), docs.end());
  std::vector<std::string_view> reversed(views.rbegin(), views.rend());
  const auto a = f::apply_filters(views, f::RuleSet::both, {}).kept;
  auto b = f::apply_filters(reversed, f::RuleSet::both, {}).kept;
  for (auto& i : b) i = docs.size() - 1 - i;
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(FilterReport, MergeAddsCounters) {
  f::FilterReport a{f::RuleSet::both, 10, 7, {{"x", 3}}};
  const f::FilterReport b{f::RuleSet::both, 5, 5, {{"x", 1}, {"y", 2}}};
  a.merge(b);
  EXPECT_EQ(a.docs_in, 15u);
  EXPECT_EQ(a.docs_out, 12u);
  EXPECT_EQ(a.rule_violations.at("x"), 4u);
  EXPECT_EQ(a.rule_violations.at("y"), 2u);
}

TEST(RuleParams, Validation) {
  f::RuleParams p;
  p.min_words = 200;
  p.max_words = 100;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_THROW(f::ruleset_from_string("gopher"), std::invalid_argument);
}
