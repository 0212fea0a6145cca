#include "shardwright/warc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "json.hpp"
#include "shardwright/text.hpp"

namespace shardwright::warc {

namespace {

using nlohmann::json;

void strip_eol(std::string& line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
}

bool is_version_line(std::string_view line) { return line.starts_with("WARC/1."); }

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string strip_angle(std::string_view s) {
  s = text::trim(s);
  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

struct HttpParts {
  std::string_view headers;
  std::string_view body;
};

std::optional<HttpParts> split_http(std::string_view payload) {
  if (!payload.starts_with("HTTP/")) return std::nullopt;
  const auto crlf = payload.find("\r\n\r\n");
  const auto lf = payload.find("\n\n");
  if (crlf == std::string_view::npos && lf == std::string_view::npos) {
    return HttpParts{payload, {}};
  }
  if (crlf != std::string_view::npos && (lf == std::string_view::npos || crlf < lf)) {
    return HttpParts{payload.substr(0, crlf), payload.substr(crlf + 4)};
  }
  return HttpParts{payload.substr(0, lf), payload.substr(lf + 2)};
}

std::optional<std::string> http_header(std::string_view headers, std::string_view name) {
  std::optional<std::string> found;
  for (auto raw : text::lines(headers)) {
    const auto line = text::trim(raw);
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    if (text::iequals_ascii(text::trim(line.substr(0, colon)), name)) {
      found = std::string(text::trim(line.substr(colon + 1)));
    }
  }
  return found;
}

}  // namespace

WarcReader::WarcReader(io::ByteSource& raw)
    : source_(io::auto_decompress(std::make_unique<io::BorrowedSource>(raw))), reader_(*source_) {}

bool WarcReader::find_version_line(std::string& line, std::uint64_t& start) {
  if (pending_line_) {
    line = std::move(*pending_line_);
    start = pending_offset_;
    pending_line_.reset();
    return true;
  }
  while (true) {
    start = reader_.offset();
    if (!reader_.read_line(line)) return false;
    strip_eol(line);
    if (!text::trim(line).empty()) return true;
  }
}

bool WarcReader::resync(std::string& line, std::uint64_t& start) {
  while (true) {
    start = reader_.offset();
    if (!reader_.read_line(line)) return false;
    strip_eol(line);
    if (is_version_line(line)) return true;
  }
}

bool WarcReader::next(WarcEntry& entry) {
  std::string line;
  std::uint64_t start = 0;
  if (!find_version_line(line, start)) return false;

  if (!is_version_line(line)) {
    RecordError err{start, "expected WARC/1.x version line"};
    std::string next_line;
    std::uint64_t next_start = 0;
    if (resync(next_line, next_start)) {
      pending_line_ = std::move(next_line);
      pending_offset_ = next_start;
    }
    entry = std::move(err);
    return true;
  }

  std::vector<std::pair<std::string, std::string>> headers;
  bool malformed_header = false;
  while (true) {
    if (!reader_.read_line(line)) throw TruncatedArchiveError(start, "archive ends inside a record header");
    strip_eol(line);
    if (line.empty()) break;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      malformed_header = true;
      continue;
    }
    headers.emplace_back(std::string(text::trim(std::string_view(line).substr(0, colon))),
                         std::string(text::trim(std::string_view(line).substr(colon + 1))));
  }

  auto header = [&](std::string_view name) -> const std::string* {
    for (const auto& [k, v] : headers) {
      if (text::iequals_ascii(k, name)) return &v;
    }
    return nullptr;
  };

  const auto* len_value = header("Content-Length");
  const auto length = len_value ? parse_u64(*len_value) : std::nullopt;
  if (!length) {
    RecordError err{start, len_value ? "invalid Content-Length" : "missing Content-Length"};
    std::string next_line;
    std::uint64_t next_start = 0;
    if (resync(next_line, next_start)) {
      pending_line_ = std::move(next_line);
      pending_offset_ = next_start;
    }
    entry = std::move(err);
    return true;
  }

  WarcRecord rec;
  rec.offset = start;
  if (reader_.read_exact(rec.http_payload, *length) != *length) {
    throw TruncatedArchiveError(start, "archive ends inside a record block");
  }

  if (malformed_header) {
    entry = RecordError{start, "header line without ':'"};
    return true;
  }
  const auto* id = header("WARC-Record-ID");
  if (id == nullptr || text::trim(*id).empty()) {
    entry = RecordError{start, "missing WARC-Record-ID"};
    return true;
  }
  rec.record_id = std::string(text::trim(*id));
  if (const auto* type = header("WARC-Type")) rec.warc_type = *type;
  rec.record_type = rec.warc_type == "response" ? RecordType::response : RecordType::other;
  if (const auto* uri = header("WARC-Target-URI")) rec.target_url = strip_angle(*uri);
  if (const auto* langs = header("WARC-Identified-Content-Language")) {
    try {
      rec.metadata_languages = parse_language_list(*langs);
    } catch (const std::invalid_argument& e) {
      entry = RecordError{start, e.what()};
      return true;
    }
  }
  entry = std::move(rec);
  return true;
}

ReadResult read_warc_records(io::ByteSource& raw) {
  ReadResult out;
  WarcReader reader(raw);
  WarcEntry entry;
  while (reader.next(entry)) {
    if (auto* r = std::get_if<WarcRecord>(&entry)) {
      out.records.push_back(std::move(*r));
    } else {
      out.errors.push_back(std::get<RecordError>(std::move(entry)));
    }
  }
  return out;
}

ReadResult read_warc_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io::IoError("cannot open " + path.string());
  io::IstreamSource src(f);
  return read_warc_records(src);
}

std::vector<LanguageTag> parse_language_list(std::string_view value) {
  std::vector<LanguageTag> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    const auto item = text::trim(value.substr(start, comma - start));
    start = comma + 1;
    if (item.empty()) continue;
    LanguageTag tag;
    const auto sep = item.find_first_of(":=");
    tag.code = std::string(text::trim(item.substr(0, sep)));
    if (sep != std::string_view::npos) {
      const auto num = text::trim(item.substr(sep + 1));
      double c = 0;
      const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), c);
      if (ec != std::errc() || ptr != num.data() + num.size() || !std::isfinite(c) || c < 0.0 || c > 1.0) {
        throw std::invalid_argument("invalid language confidence: " + std::string(item));
      }
      tag.confidence = c;
    }
    if (tag.code.empty()) throw std::invalid_argument("empty language code");
    out.push_back(std::move(tag));
  }
  return out;
}

std::string normalize_language_code(std::string_view code) {
  static const std::unordered_map<std::string, std::string> k639_3 = {
      {"por", "pt"}, {"eng", "en"}, {"spa", "es"}, {"fra", "fr"}, {"deu", "de"}, {"ita", "it"},
      {"nld", "nl"}, {"rus", "ru"}, {"zho", "zh"}, {"jpn", "ja"}, {"glg", "gl"}, {"cat", "ca"},
      {"pol", "pl"}, {"tur", "tr"}, {"ara", "ar"}, {"kor", "ko"}, {"swe", "sv"}, {"ces", "cs"},
  };
  auto lower = text::ascii_lower(text::trim(code));
  if (const auto it = k639_3.find(lower); it != k639_3.end()) return it->second;
  return lower;
}

bool select_language(const WarcRecord& record, std::string_view target) {
  const auto want = normalize_language_code(target);
  return std::any_of(record.metadata_languages.begin(), record.metadata_languages.end(),
                     [&](const LanguageTag& t) { return normalize_language_code(t.code) == want; });
}

std::string_view to_string(SkipReason r) {
  switch (r) {
    case SkipReason::empty_body: return "empty_body";
    case SkipReason::non_html: return "non_html";
    case SkipReason::not_response: return "not_response";
    case SkipReason::malformed_http: return "malformed_http";
  }
  return "unknown";
}

RawPage to_raw_page(const WarcRecord& record, std::string_view crawl_id) {
  if (record.record_type != RecordType::response) throw SkipPage(SkipReason::not_response);
  const auto parts = split_http(record.http_payload);
  if (!parts) throw SkipPage(SkipReason::malformed_http);
  if (const auto ct = http_header(parts->headers, "Content-Type")) {
    auto media = text::ascii_lower(text::trim(std::string_view(*ct).substr(0, ct->find(';'))));
    if (!media.empty() && media != "text/html") throw SkipPage(SkipReason::non_html);
  }
  if (parts->body.empty()) throw SkipPage(SkipReason::empty_body);
  RawPage page;
  page.id = record.record_id;
  page.url = record.target_url;
  page.html = text::decode_utf8_lossy(parts->body);
  page.crawl_id = std::string(crawl_id);
  for (const auto& t : record.metadata_languages) page.languages.push_back(t.code);
  return page;
}

std::string page_to_json(const RawPage& page) {
  json j;
  j["id"] = page.id;
  j["url"] = page.url;
  j["crawl_id"] = page.crawl_id;
  j["html"] = page.html;
  j["languages"] = page.languages;
  return j.dump();
}

RawPage page_from_json(std::string_view line) {
  const auto j = json::parse(line);
  RawPage p;
  p.id = j.value("id", std::string());
  p.url = j.at("url").get<std::string>();
  p.crawl_id = j.at("crawl_id").get<std::string>();
  p.html = j.at("html").get<std::string>();
  if (j.contains("languages")) p.languages = j.at("languages").get<std::vector<std::string>>();
  if (p.id.empty()) p.id = p.url;
  return p;
}

std::string serialize_record(const RecordSpec& spec) {
  std::string out = "WARC/1.0\r\n";
  out += "WARC-Type: " + spec.warc_type + "\r\n";
  out += "WARC-Date: " + spec.date + "\r\n";
  out += "WARC-Record-ID: " + spec.record_id + "\r\n";
  if (!spec.target_url.empty()) out += "WARC-Target-URI: " + spec.target_url + "\r\n";
  if (!spec.languages.empty()) out += "WARC-Identified-Content-Language: " + spec.languages + "\r\n";
  out += spec.warc_type == "response" ? "Content-Type: application/http; msgtype=response\r\n"
                                      : "Content-Type: application/http; msgtype=request\r\n";
  out += "Content-Length: " + std::to_string(spec.payload.size()) + "\r\n\r\n";
  out += spec.payload;
  out += "\r\n\r\n";
  return out;
}

std::string make_http_response(std::string_view body, std::string_view content_type) {
  std::string out = "HTTP/1.1 200 OK\r\n";
  if (!content_type.empty()) out += "Content-Type: " + std::string(content_type) + "\r\n";
  out += "Content-Length: " + std::to_string(body.size()) + "\r\n\r\n";
  out += body;
  return out;
}

}  // namespace shardwright::warc
