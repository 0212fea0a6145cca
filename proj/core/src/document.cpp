#include "shardwright/document.hpp"

#include "json.hpp"

namespace shardwright {

std::string Document::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["url"] = url;
  j["crawl_id"] = crawl_id;
  j["extraction_mode"] = extraction_mode;
  j["word_count"] = word_count;
  j["char_count"] = char_count;
  if (edu) j["edu"] = *edu;
  if (stem) j["stem"] = *stem;
  if (toxic) j["toxic"] = *toxic;
  j["text"] = text;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

Document Document::from_json(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  Document d;
  d.id = j.at("id").get<std::string>();
  d.url = j.value("url", std::string());
  d.crawl_id = j.value("crawl_id", std::string());
  d.text = j.at("text").get<std::string>();
  d.word_count = j.value("word_count", std::size_t{0});
  d.char_count = j.value("char_count", std::size_t{0});
  d.extraction_mode = j.value("extraction_mode", std::string());
  if (j.contains("edu")) d.edu = j["edu"].get<double>();
  if (j.contains("stem")) d.stem = j["stem"].get<double>();
  if (j.contains("toxic")) d.toxic = j["toxic"].get<double>();
  return d;
}

}  // namespace shardwright
