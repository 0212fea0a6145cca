#pragma once

#include <string>

#include "shardwright/hash.hpp"

namespace shardwright::bench {

inline constexpr const char* kWords[] = {
    "a",       "o",        "de",       "que",     "cidade",  "governo", "escola",   "projeto",  "saúde",
    "pessoas", "mercado",  "educação", "estado",  "ano",     "novo",    "trabalho", "pesquisa", "região",
    "dados",   "história", "no",       "da",      "em",      "para",    "com",      "uma",      "público"};

/// Sentences of 6-14 common Portuguese words.
inline std::string prose(SplitMix64& rng, std::size_t words) {
  std::string out;
  std::size_t in_sentence = 0, sentence_len = 6 + rng.uniform(9);
  for (std::size_t i = 0; i < words; ++i) {
    if (!out.empty()) out += ' ';
    out += kWords[rng.uniform(std::size(kWords))];
    if (++in_sentence == sentence_len || i + 1 == words) {
      out += '.';
      in_sentence = 0;
      sentence_len = 6 + rng.uniform(9);
    }
  }
  return out;
}

}  // namespace shardwright::bench
