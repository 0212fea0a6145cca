#include "rule_fixtures.hpp"

namespace shardwright::testing {

namespace {

// Five sentences, ten words each: exactly 50 words.
const std::string kS1 = "A cidade inaugurou uma nova biblioteca pública no centro histórico.";
const std::string kS2 = "Os moradores visitaram o espaço durante o fim de semana.";
const std::string kS3 = "A prefeitura pretende ampliar o horário de funcionamento em breve.";
const std::string kS4 = "Professores e estudantes elogiaram o acervo e as salas novas.";
const std::string kS5 = "O projeto recebeu apoio de empresas e de moradores locais.";
const std::string kBase = kS1 + " " + kS2 + " " + kS3 + " " + kS4 + " " + kS5;

std::string repeat(const std::string& s, int n, const std::string& sep = " ") {
  std::string out;
  for (int i = 0; i < n; ++i) out += (i ? sep : "") + s;
  return out;
}

// `lines` lines of five words; the first `ellipsis` end with "...".
std::string ellipsis_text(int lines, int ellipsis) {
  const std::string words[] = {"Moradores", "elogiaram", "a", "biblioteca", "nova"};
  std::string out;
  for (int i = 0; i < lines; ++i) {
    for (int w = 0; w < 5; ++w) out += (w ? " " : "") + words[w];
    out += i < ellipsis ? "...\n" : ".\n";
  }
  return out;
}

}  // namespace

std::vector<RuleFixture> rule_fixture_suite() {
  namespace r = filters::rule;
  std::vector<RuleFixture> f;
  auto add = [&](std::string name, std::string_view rule, bool keep, std::string text) {
    f.push_back({std::move(name), std::string(rule), keep, std::move(text)});
  };

  add("49 words", r::word_count_low, false,
      kS1 + " " + kS2 + " " + kS3 + " " + kS4 + " O projeto recebeu apoio de empresas e de moradores.");
  add("exactly 50 words", r::word_count_low, true, kBase);

  add("100050 words", r::word_count_high, false, repeat(kBase, 2001));
  add("exactly 100000 words", r::word_count_high, true, repeat(kBase, 2000));

  // Mean length 21/9 per sentence.
  add("short words", r::mean_wlen_low, false, repeat("Eu vi um rio e um céu azul lá.", 6));
  // Every word has exactly three letters.
  add("mean length exactly 3", r::mean_wlen_low, true, repeat("Ele foi ver seu rio com paz.", 8));

  add("long words", r::mean_wlen_high, false,
      repeat("Administradores internacionais desenvolveram metodologias extraordinariamente "
             "transformadoras para organizações governamentais contemporâneas brasileiras.",
             5) +
          " E de.");
  add("long but acceptable words", r::mean_wlen_high, true,
      repeat("Pesquisadores brasileiros apresentaram resultados importantes sobre tecnologia "
             "agrícola para pequenas propriedades familiares.",
             5) +
          " E de.");

  // Six hashtags add six words and six '#': 6/56 > 0.1.
  add("too many hashtags", r::symbol_ratio_high, false,
      kBase + " #cidade #cultura #leitura #livros #biblioteca #centro");
  // Five of the fifty words carry '#': ratio exactly 0.1.
  add("symbol ratio exactly 0.1", r::symbol_ratio_high, true,
      "A #cidade inaugurou uma nova #biblioteca pública no centro histórico. " + kS2 + " " + kS3 +
          " Professores e #estudantes elogiaram o #acervo e as salas novas. O projeto recebeu apoio de "
          "#empresas e de moradores locais.");

  add("31 of 100 lines end with ellipsis", r::ellipsis_lines_high, false, ellipsis_text(100, 31));
  add("exactly 30% of lines end with ellipsis", r::ellipsis_lines_high, true, ellipsis_text(10, 3));

  // Six numeric words out of 56.
  add("numbers dominate", r::alpha_fraction_low, false, kBase + " 2019 2020 2021 2022 2023 2024");
  // Five numeric words out of 50: fraction exactly 0.9.
  add("alpha fraction exactly 0.9", r::alpha_fraction_low, true,
      "A cidade inaugurou 1 nova biblioteca pública no centro 2022. Os moradores visitaram o espaço "
      "durante o fim de 3. " +
          kS3 + " Professores e estudantes elogiaram o acervo e 40 salas novas. O projeto recebeu 500 de "
                "empresas e de moradores locais.");

  add("one stop word", r::stopwords_low, false,
      repeat("Professores elogiaram bibliotecas públicas modernas. Estudantes visitaram acervos históricos "
             "renovados. Moradores aprovaram projetos culturais importantes.",
             4) +
          " Tudo bem e ótimo.");
  add("exactly two stop words", r::stopwords_low, true,
      repeat("Professores elogiaram bibliotecas públicas modernas. Estudantes visitaram acervos históricos "
             "renovados. Moradores aprovaram projetos culturais importantes.",
             4) +
          " Tudo bem e muito ótimo.");

  add("curly brace", r::contains_brace, false, kBase + " Veja {detalhes} no site.");
  add("parentheses only", r::contains_brace, true, kBase + " Veja (detalhes) no site.");

  add("lorem ipsum any case", r::lorem_ipsum, false, kBase + " LOREM Ipsum dolor.");
  add("ipsum alone", r::lorem_ipsum, true, kBase + " Ipsum e lorem separados.");

  add("javascript notice", r::javascript, false, kBase + " Ative o JavaScript no navegador.");
  add("java and script apart", r::javascript, true, kBase + " O curso de Java tem um script novo.");

  add("restricted word", r::restricted_words, false, kBase + " Conteúdo com pornografia aqui.");
  add("restricted word inside a longer word", r::restricted_words, true, kBase + " Houve uma porrada na rua.");

  add("two sentences", r::sentences_low, false,
      kS1.substr(0, kS1.size() - 1) + " e " + kS2.substr(0, kS2.size() - 1) + " e " + kS3 + " " +
          kS4.substr(0, kS4.size() - 1) + " e " + kS5);
  add("exactly three sentences", r::sentences_low, true,
      kS1.substr(0, kS1.size() - 1) + " e " + kS2 + " " + kS3.substr(0, kS3.size() - 1) + " e " + kS4 + " " +
          kS5);
  return f;
}

filters::RuleParams rule_fixture_params() {
  filters::RuleParams p;
  p.restricted_words = filters::load_word_list(SHARDWRIGHT_SOURCE_DATA "/restricted_words_pt.txt");
  return p;
}

}  // namespace shardwright::testing
