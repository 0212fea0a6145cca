#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "shardwright/gzip.hpp"
#include "shardwright/warc.hpp"

namespace shardwright::testing {

namespace fs = std::filesystem;

fs::path temp_dir(std::string_view name) {
  const auto dir = fs::temp_directory_path() / ("shardwright-test-" + std::string(name));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_bytes(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

const std::vector<std::string>& portuguese_vocabulary() {
  static const std::vector<std::string> words = {
      "cidade",      "governo",    "escola",     "estudantes", "professor",  "pesquisa",  "universidade",
      "mercado",     "economia",   "empresa",    "trabalho",   "saúde",      "hospital",  "médicos",
      "projeto",     "relatório",  "ciência",    "tecnologia", "energia",    "água",      "região",
      "população",   "história",   "cultura",    "música",     "festival",   "livro",     "autor",
      "leitores",    "biblioteca", "prefeitura", "estado",     "país",       "mundo",     "futebol",
      "campeonato",  "jogadores",  "torcida",    "estádio",    "temporada",  "clima",     "chuva",
      "agricultura", "produção",   "alimentos",  "preços",     "consumo",    "famílias",  "crianças",
      "programa",    "investimento", "recursos", "ministério", "lei",        "justiça",   "tribunal",
      "decisão",     "processo",   "dados",      "resultado",  "análise",    "estudo",    "grupo",
      "equipe",      "reunião",    "proposta",   "acordo",     "setor",      "serviços",  "transporte",
      "ônibus",      "estrada",    "viagem",     "turismo",    "praia",      "natureza",  "floresta",
      "animais",     "espécies",   "rio",        "ambiente",   "política",   "eleição",   "candidatos",
      "votos",       "campanha",   "debate",     "sociedade",  "comunidade", "bairro",    "moradores",
      "segurança",   "polícia",    "ano",        "mês",        "semana",     "dia",       "manhã",
      "importante",  "novo",       "grande",     "pequeno",    "público",    "nacional",  "local",
      "social",      "recente",    "principal",  "diferente",  "possível",   "necessário", "melhor",
      "afirmou",     "disse",      "explicou",   "anunciou",   "apresentou", "mostrou",   "recebeu",
      "começou",     "aumentou",   "reduziu",    "permite",    "precisa",    "pode",      "deve",
      "tem",         "faz",        "vai",        "continua",   "espera",     "acredita",  "segundo",
  };
  return words;
}

namespace {

const std::vector<std::string>& function_words() {
  static const std::vector<std::string> words = {"a",   "o",  "de",   "do",  "da",   "em",  "para", "com",
                                                 "que", "e",  "os",   "as",  "no",   "na",  "um",   "uma",
                                                 "por", "se", "mais", "mas", "como", "dos", "das",  "ao"};
  return words;
}

const std::vector<std::string>& syllables() {
  static const std::vector<std::string> s = {"ba", "ce", "di", "fo", "gu", "la", "me", "ni", "po", "ru",
                                             "sa", "te", "vi", "zo", "cra", "pli", "tro", "ste", "mun", "gar",
                                             "lor", "qui", "nha", "lhe", "bri", "dos", "fen", "ja", "ko", "wu",
                                             "xa", "yel", "zan", "ru", "ple", "tam", "vor", "sil", "rex", "hou"};
  return s;
}

template <typename T>
const T& pick(SplitMix64& rng, const std::vector<T>& v) {
  return v[rng.uniform(v.size())];
}

std::string capitalize(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

std::string title(SplitMix64& rng) {
  std::string t = capitalize(pick(rng, portuguese_vocabulary()));
  const auto n = 3 + rng.uniform(5);
  for (std::size_t i = 0; i < n; ++i) {
    t += ' ';
    t += (i % 2 == 0) ? pick(rng, function_words()) : pick(rng, portuguese_vocabulary());
  }
  return t;
}

}  // namespace

std::string prose(SplitMix64& rng, std::size_t words) {
  std::string out;
  std::size_t written = 0;
  while (written < words) {
    const auto len = std::min<std::size_t>(words - written, 6 + rng.uniform(9));
    for (std::size_t i = 0; i < len; ++i) {
      std::string w = (rng.uniform(10) < 4) ? pick(rng, function_words()) : pick(rng, portuguese_vocabulary());
      if (i == 0) {
        w = capitalize(w);
        if (!out.empty()) out += ' ';
      } else {
        out += ' ';
      }
      out += w;
    }
    out += '.';
    written += len;
  }
  return out;
}

std::string random_words(SplitMix64& rng, std::size_t words) {
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i > 0) out += ' ';
    const auto n = 2 + rng.uniform(3);
    for (std::size_t s = 0; s < n; ++s) out += pick(rng, syllables());
  }
  return out;
}

std::string boilerplate_page(SplitMix64& rng, std::size_t paragraphs) {
  const auto& vocab = portuguese_vocabulary();
  std::string h = "<!DOCTYPE html>\n<html lang=\"pt-BR\"><head><meta charset=\"utf-8\"><title>Portal Notícias - " +
                  title(rng) + "</title>\n<style>body { font-family: sans-serif; } .nav { color: #333; }</style>\n" +
                  "<script>window.dataLayer = window.dataLayer || []; function gtag(){dataLayer.push(arguments);}"
                  "</script></head>\n<body>\n<header><div class=\"logo\">Portal Notícias</div>\n<nav><ul>";
  for (int i = 0; i < 8; ++i) {
    const auto& w = pick(rng, vocab);
    h += "<li><a href=\"/" + w + "\">" + capitalize(w) + "</a></li>";
  }
  h += "</ul></nav></header>\n";
  h += "<div class=\"breadcrumb\"><a href=\"/\">Início</a> &gt; <a href=\"/secao\">" + capitalize(pick(rng, vocab)) +
       "</a></div>\n";
  h += "<main><article><h1>" + title(rng) + "</h1>\n<p class=\"meta\">Publicado em " +
       std::to_string(1 + rng.uniform(28)) + " de março de 2022</p>\n";
  for (std::size_t p = 0; p < paragraphs; ++p) h += "<p>" + prose(rng, 40 + rng.uniform(40)) + "</p>\n";
  h += "</article>\n<aside><h3>Mais lidas</h3><ul>";
  for (int i = 0; i < 5; ++i) h += "<li><a href=\"/n/" + std::to_string(i) + "\">" + title(rng) + "</a></li>";
  h += "</ul></aside></main>\n";
  h += "<div class=\"share\">Compartilhe: <a href=\"#\">Facebook</a> <a href=\"#\">Twitter</a> "
       "<a href=\"#\">WhatsApp</a></div>\n";
  h += "<footer><p>&copy; 2022 Portal Notícias. Todos os direitos reservados.</p>"
       "<a href=\"/privacidade\">Política de privacidade</a> | <a href=\"/termos\">Termos de uso</a></footer>\n";
  h += "</body></html>\n";
  return h;
}

std::vector<std::string> boilerplate_fixture_set(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::string> pages;
  for (std::size_t i = 0; i < n; ++i) pages.push_back(boilerplate_page(rng, 1 + rng.uniform(5)));
  return pages;
}

std::string record_id(std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "<urn:uuid:00000000-0000-4000-8000-%012zu>", i);
  return buf;
}

SyntheticWarc synthetic_warc(std::size_t records, std::uint64_t seed, bool gzip) {
  SplitMix64 rng(seed);
  SyntheticWarc out;
  std::vector<std::vector<std::string>> articles;  // paragraph texts of earlier fresh articles

  auto page_from = [&](const std::vector<std::string>& paras) {
    std::string h = "<html><head><title>" + title(rng) + "</title></head><body><nav><a href=\"/\">Início</a> " +
                    "<a href=\"/a\">Notícias</a> <a href=\"/b\">Esportes</a></nav><article>";
    for (const auto& p : paras) h += "<p>" + p + "</p>";
    return h + "</article><footer>Todos os direitos reservados.</footer></body></html>";
  };

  for (std::size_t i = 0; i < records; ++i) {
    warc::RecordSpec spec;
    spec.record_id = record_id(i);
    spec.target_url = "https://exemplo.com.br/noticia/" + std::to_string(i);
    spec.languages = "por";
    const auto kind = i % 20;
    if (kind == 0) {
      spec.warc_type = "request";
      spec.payload = "GET /noticia/" + std::to_string(i) + " HTTP/1.1\r\nHost: exemplo.com.br\r\n\r\n";
    } else if (kind == 1) {
      spec.languages = "eng";
      spec.payload = warc::make_http_response("<html><body><p>This is an English page about the weather and "
                                              "other things that matter.</p></body></html>");
    } else if (kind == 2) {
      spec.payload = warc::make_http_response("%PDF-1.4 binary", "application/pdf");
    } else if (kind == 3) {
      spec.payload = warc::make_http_response("");
    } else if (kind == 4) {
      spec.payload = warc::make_http_response(page_from({prose(rng, 20)}));
    } else if (kind == 5) {
      spec.payload = warc::make_http_response(
          page_from({"Lorem ipsum dolor sit amet. " + prose(rng, 80), prose(rng, 40)}));
    } else if ((kind == 6 || kind == 7 || kind == 8) && !articles.empty()) {
      auto paras = articles[rng.uniform(articles.size())];
      if (kind != 8) {
        // One substituted word in the last paragraph keeps Jaccard high.
        auto& last = paras.back();
        const auto pos = last.rfind(' ');
        last = last.substr(0, pos) + " " + pick(rng, portuguese_vocabulary()) + ".";
      }
      spec.payload = warc::make_http_response(page_from(paras));
      spec.languages = "por:0.97,eng:0.02";
    } else {
      std::vector<std::string> paras;
      const auto n = 2 + rng.uniform(4);
      for (std::size_t p = 0; p < n; ++p) paras.push_back(prose(rng, 40 + rng.uniform(40)));
      spec.payload = warc::make_http_response(page_from(paras));
      articles.push_back(std::move(paras));
    }
    const auto rec = warc::serialize_record(spec);
    out.bytes += gzip ? io::gzip_compress(rec) : rec;
    ++out.records;
  }
  return out;
}

std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> planted_pair(SplitMix64& rng, double jaccard,
                                                                                std::size_t union_size) {
  const auto only_each = static_cast<std::size_t>(std::llround((1.0 - jaccard) * union_size / 2.0));
  const auto shared = union_size - 2 * only_each;
  std::vector<std::uint64_t> a, b;
  for (std::size_t i = 0; i < shared; ++i) {
    const auto h = rng.next();
    a.push_back(h);
    b.push_back(h);
  }
  for (std::size_t i = 0; i < only_each; ++i) {
    a.push_back(rng.next());
    b.push_back(rng.next());
  }
  return {std::move(a), std::move(b)};
}

std::size_t planted_prefix_words(double jaccard) {
  // A variant keeps the first m words of a 120-word base and replaces the
  // rest, so the two share m-4 of their 116 five-word shingles each:
  // J = (m-4) / (232 - (m-4)).
  const double shared = jaccard * 232.0 / (1.0 + jaccard);
  return static_cast<std::size_t>(std::lround(shared)) + 4;
}

std::vector<PlantedDoc> planted_near_duplicates(std::size_t bases, std::size_t variants, std::uint64_t seed) {
  constexpr std::size_t kWords = 120;
  SplitMix64 rng(seed);
  std::vector<std::vector<std::string>> base_words;
  for (std::size_t i = 0; i < bases; ++i) {
    std::vector<std::string> words;
    for (std::size_t w = 0; w < kWords; ++w) words.push_back(random_words(rng, 1));
    base_words.push_back(words);
  }
  auto join = [](const std::vector<std::string>& ws) {
    std::string s;
    for (const auto& w : ws) s += (s.empty() ? "" : " ") + w;
    return s;
  };
  std::vector<PlantedDoc> docs;
  char id[32];
  for (std::size_t i = 0; i < bases; ++i) {
    std::snprintf(id, sizeof id, "doc-%05zu", i);
    docs.push_back({id, join(base_words[i])});
  }
  for (std::size_t v = 0; v < variants; ++v) {
    auto words = base_words[rng.uniform(bases)];
    const auto level = kPlantedJaccardLevels[rng.uniform(std::size(kPlantedJaccardLevels))];
    for (std::size_t w = planted_prefix_words(level); w < kWords; ++w) words[w] = random_words(rng, 1);
    std::snprintf(id, sizeof id, "doc-%05zu", bases + v);
    docs.push_back({id, join(words)});
  }
  return docs;
}

IdPairs exhaustive_duplicate_pairs(const std::vector<PlantedDoc>& docs, std::size_t k, double threshold) {
  std::vector<dedup::ShingleSet> sets;
  for (const auto& d : docs) sets.push_back(dedup::shingle(d.text, k));
  // Plain quadratic union-find, independent of the library's DisjointSets.
  std::vector<std::size_t> parent(docs.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t j = i + 1; j < docs.size(); ++j) {
      if (dedup::exact_jaccard(sets[i], sets[j]) >= threshold) parent[root(j)] = root(i);
    }
  }
  IdPairs out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t j = i + 1; j < docs.size(); ++j) {
      if (root(i) == root(j)) out.insert(std::minmax(docs[i].id, docs[j].id));
    }
  }
  return out;
}

IdPairs cluster_pairs(const std::vector<dedup::DuplicateCluster>& clusters) {
  IdPairs out;
  for (const auto& c : clusters) {
    for (std::size_t i = 0; i < c.member_ids.size(); ++i) {
      for (std::size_t j = i + 1; j < c.member_ids.size(); ++j) out.insert(std::minmax(c.member_ids[i], c.member_ids[j]));
    }
  }
  return out;
}

double pair_f1(const IdPairs& found, const IdPairs& truth) {
  if (found.empty() && truth.empty()) return 1.0;
  std::size_t tp = 0;
  for (const auto& p : found) tp += truth.contains(p);
  if (tp == 0) return 0.0;
  const double precision = static_cast<double>(tp) / found.size();
  const double recall = static_cast<double>(tp) / truth.size();
  return 2 * precision * recall / (precision + recall);
}

quality::EmbeddingMatrix stub_embeddings(const std::vector<std::string>& ids, std::size_t dim, std::uint64_t seed) {
  quality::EmbeddingMatrix m(dim);
  std::vector<float> v(dim);
  for (const auto& id : ids) {
    SplitMix64 rng(hash_bytes(id, seed));
    double norm = 0.0;
    for (auto& x : v) {
      x = static_cast<float>(rng.normal());
      norm += static_cast<double>(x) * x;
    }
    for (auto& x : v) x = static_cast<float>(x / std::sqrt(norm));
    m.add(id, v);
  }
  return m;
}

std::vector<contamination::CorpusDoc> ContaminationInstance::corpus() const {
  std::vector<contamination::CorpusDoc> out;
  for (std::size_t i = 0; i < doc_ids.size(); ++i) out.push_back({doc_ids[i], doc_texts[i]});
  return out;
}

ContaminationInstance contamination_instance(std::size_t examples, std::size_t docs,
                                             const contamination::ProbeParams& params, std::uint64_t seed) {
  static constexpr const char* kTasks[] = {"ENEM", "BLUEX", "BoolQ"};
  SplitMix64 rng(seed);
  ContaminationInstance inst;
  char id[32];
  for (std::size_t i = 0; i < examples; ++i) {
    std::snprintf(id, sizeof id, "ex-%04zu", i);
    inst.examples.push_back({id, kTasks[i % 3], prose(rng, 20 + rng.uniform(40))});
  }
  for (std::size_t d = 0; d < docs; ++d) {
    std::string text = random_words(rng, 30 + rng.uniform(60));
    const auto& ex = inst.examples[rng.uniform(examples)];
    const auto probe = contamination::make_probe(ex.text, params.substrings, params.length,
                                                 contamination::example_seed(params.seed, ex.example_id),
                                                 params.normalize_whitespace, ex.example_id);
    const auto kind = rng.uniform(10);
    if (kind == 0) {
      text += " " + ex.text + " " + random_words(rng, 10);
    } else if (kind <= 2) {
      for (const auto& sub : probe.substrings) text += " " + sub + " " + random_words(rng, 5);
    } else if (kind <= 4 && probe.substrings.size() > 1) {
      for (std::size_t k = 0; k + 1 < probe.substrings.size(); ++k) {
        text += " " + probe.substrings[k] + " " + random_words(rng, 5);
      }
    }
    std::snprintf(id, sizeof id, "doc-%05zu", d);
    inst.doc_ids.push_back(id);
    inst.doc_texts.push_back(std::move(text));
  }
  return inst;
}

}  // namespace shardwright::testing
