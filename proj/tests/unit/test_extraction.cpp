#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "shardwright/extraction.hpp"
#include "shardwright/html.hpp"
#include "shardwright/text.hpp"

namespace ex = shardwright::extraction;
namespace html = shardwright::html;
namespace text = shardwright::text;
namespace t = shardwright::testing;

namespace {

// Independent DOM walk: the collapsed content of every text node outside
// script/style/template.
std::vector<std::string> visible_text_nodes(const std::string& page) {
  const auto dom = html::parse(page);
  std::vector<std::string> out;
  html::walk(*dom, [&](const html::Node& n) {
    if (n.kind != html::Node::Kind::text) return;
    for (const auto* p = n.parent; p; p = p->parent) {
      if (p->kind == html::Node::Kind::element && html::is_non_text_element(p->tag)) return;
    }
    auto s = text::collapse_whitespace(n.data, true);
    if (!s.empty()) out.push_back(std::move(s));
  });
  return out;
}

}  // namespace

TEST(Naive, SingleTextNode) {
  EXPECT_EQ(ex::extract_naive("<html><body><p>Olá mundo</p></body></html>").text, "Olá mundo");
}

TEST(Naive, ScriptExcludedAndBlocksBecomeLines) {
  EXPECT_EQ(ex::extract_naive("<p>a</p><script>var x=1</script><p>b</p>").text, "a\nb");
  EXPECT_EQ(ex::extract_naive("<p>a</p><style>p{}</style><!-- c --><p>b</p>").text, "a\nb");
}

TEST(Naive, InlineElementsDoNotBreakWords) {
  EXPECT_EQ(ex::extract_naive("<p>pala<b>vra</b> <i>outra</i></p>").text, "palavra outra");
  EXPECT_EQ(ex::extract_naive("<p>linha um<br>linha dois</p>").text, "linha um\nlinha dois");
}

TEST(Naive, CountsMatchDefinitions) {
  const auto d = ex::extract_naive("<p>Ação   rápida,\n agora!</p><div>R$ 10</div>");
  EXPECT_EQ(d.text, "Ação rápida, agora!\nR$ 10");
  EXPECT_EQ(d.word_count, text::word_count(d.text));
  EXPECT_EQ(d.char_count, text::code_point_count(d.text));
  EXPECT_EQ(d.word_count, 5u);  // "R" counts, "$" does not
}

TEST(Naive, EveryVisibleTextNodeAppears) {
  for (const auto& page : t::boilerplate_fixture_set(20, 17)) {
    const auto out = ex::extract_naive(page).text;
    for (const auto& node : visible_text_nodes(page)) EXPECT_NE(out.find(node), std::string::npos) << node;
  }
}

TEST(Naive, WhitespaceNormalizationIsIdempotent) {
  const auto d = ex::extract_naive("<p>  a \n\t b </p><p>c</p>");
  EXPECT_EQ(ex::extract_naive("<p>" + d.text + "</p>").text, text::collapse_whitespace(d.text, true));
}

TEST(Content, ArticleKeptNavDropped) {
  shardwright::SplitMix64 rng(5);
  std::string nav = "<nav>";
  std::vector<std::string> nav_words;
  for (int i = 0; i < 30; ++i) {
    nav_words.push_back("Menu" + std::to_string(i));
    nav += "<a href=\"/" + std::to_string(i) + "\">" + nav_words.back() + "</a> ";
  }
  nav += "</nav>";
  std::string article = "<article>";
  std::size_t words = 0;
  std::vector<std::string> paras;
  while (words < 300) {
    paras.push_back(t::prose(rng, 60));
    words += text::word_count(paras.back());
    article += "<p>" + paras.back() + "</p>";
  }
  article += "</article>";
  const auto out = ex::extract_content("<html><body>" + nav + article + "</body></html>", {}).text;
  for (const auto& p : paras) EXPECT_NE(out.find(p), std::string::npos);
  for (const auto& w : nav_words) EXPECT_EQ(out.find(w), std::string::npos);
}

TEST(Content, MenuOnlyPageIsEmpty) {
  std::string page = "<body><div>";
  for (int i = 0; i < 12; ++i) page += "<a href=\"#\">Seção número " + std::to_string(i) + "</a> | ";
  page += "</div></body>";
  const auto out = ex::extract_content(page, {});
  EXPECT_EQ(out.text, "");
  EXPECT_EQ(out.word_count, 0u);
}

TEST(Content, LinkDensityBoundaryIsInclusive) {
  // 15 non-space chars, 5 of them linked; a density equal to the bound is kept.
  const std::string page = "<p>abcde <a href=x>fghij</a> k l m n o</p>";
  const auto blocks = ex::render_blocks(page, {});
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].chars, 15u);
  EXPECT_EQ(blocks[0].link_chars, 5u);
  ex::ExtractionParams p;
  p.max_link_density = 5.0 / 15.0;
  EXPECT_FALSE(ex::extract_content(page, p).text.empty());
  p.max_link_density = 4.0 / 15.0;
  EXPECT_TRUE(ex::extract_content(page, p).text.empty());
}

TEST(Content, ShortBlockKeptNextToStrongSibling) {
  const std::string page =
      "<div><h2>Título curto</h2><p>Este parágrafo tem palavras suficientes para passar.</p></div>"
      "<div><span>Sozinho</span></div>";
  const auto out = ex::extract_content(page, {}).text;
  EXPECT_EQ(out, "Título curto\nEste parágrafo tem palavras suficientes para passar.");
}

TEST(Content, BoilerplateTagsDropEvenLongBlocks) {
  const std::string footer = "Este rodapé tem muitas palavras mas não é conteúdo principal da página";
  const auto out = ex::extract_content("<p>Um texto principal com palavras suficientes aqui.</p><footer><p>" +
                                           footer + "</p></footer>",
                                       {});
  EXPECT_EQ(out.text.find("rodapé"), std::string::npos);
  ex::ExtractionParams p;
  p.boilerplate_tags.clear();
  EXPECT_NE(ex::extract_content("<footer><p>" + footer + "</p></footer>", p).text.find("rodapé"), std::string::npos);
}

TEST(Content, LinesAreContainedInNaiveOutput) {
  for (const auto& page : t::boilerplate_fixture_set(40, 23)) {
    const auto naive = ex::extract_naive(page);
    const auto content = ex::extract_content(page, {});
    for (const auto line : text::lines(content.text)) EXPECT_NE(naive.text.find(line), std::string::npos);
    EXPECT_LE(content.word_count, naive.word_count);
  }
}

TEST(Content, BoilerplateSetHasFewerWordsThanNaive) {
  std::size_t naive = 0, content = 0;
  for (const auto& page : t::boilerplate_fixture_set(50, 31)) {
    naive += ex::extract_naive(page).word_count;
    content += ex::extract_content(page, {}).word_count;
  }
  EXPECT_LT(content, naive);
  EXPECT_GT(content, 0u);
}

TEST(Content, Deterministic) {
  const auto page = t::boilerplate_fixture_set(1, 2).front();
  EXPECT_EQ(ex::extract_content(page, {}).text, ex::extract_content(page, {}).text);
}

TEST(Params, Validation) {
  ex::ExtractionParams p;
  p.max_link_density = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_EQ(ex::mode_from_string("naive"), ex::Mode::naive);
  EXPECT_THROW(ex::mode_from_string("trafilatura"), std::invalid_argument);
}
