#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "shardwright/gzip.hpp"

namespace shardwright::warc {

enum class RecordType { response, other };

struct LanguageTag {
  std::string code;
  /// Absent when the archive lists the language without a score.
  std::optional<double> confidence;
};

struct WarcRecord {
  std::string record_id;
  RecordType record_type = RecordType::other;
  std::string warc_type;  // raw WARC-Type value
  std::string target_url;
  std::string http_payload;
  std::vector<LanguageTag> metadata_languages;
  std::uint64_t offset = 0;  // offset of the version line in the (decompressed) stream
};

/// A malformed record. Reading continues after it.
struct RecordError {
  std::uint64_t offset = 0;
  std::string message;
};

/// The archive ended inside a record; nothing after it can be recovered.
class TruncatedArchiveError : public io::IoError {
 public:
  TruncatedArchiveError(std::uint64_t offset, const std::string& what)
      : io::IoError(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

using WarcEntry = std::variant<WarcRecord, RecordError>;

/// Streaming WARC/1.x reader. Accepts plain archives and archives made of
/// per-record gzip members (the source is inflated transparently).
class WarcReader {
 public:
  explicit WarcReader(io::ByteSource& raw);

  /// Produces the next record or record-level error in file order. Returns
  /// false at a clean end of stream; throws TruncatedArchiveError otherwise.
  bool next(WarcEntry& entry);

 private:
  bool find_version_line(std::string& line, std::uint64_t& start);
  bool resync(std::string& line, std::uint64_t& start);

  std::unique_ptr<io::ByteSource> source_;
  io::BufferedReader reader_;
  std::optional<std::string> pending_line_;
  std::uint64_t pending_offset_ = 0;
};

struct ReadResult {
  std::vector<WarcRecord> records;
  std::vector<RecordError> errors;
};

ReadResult read_warc_records(io::ByteSource& raw);
ReadResult read_warc_file(const std::filesystem::path& path);

/// Parses a WARC-Identified-Content-Language value: comma-separated codes,
/// each optionally followed by ":confidence".
std::vector<LanguageTag> parse_language_list(std::string_view value);

/// Lowercases and maps ISO 639-3 codes to their ISO 639-1 equivalents where a
/// mapping is known ("por" -> "pt").
std::string normalize_language_code(std::string_view code);

/// Membership test; confidence is ignored.
bool select_language(const WarcRecord& record, std::string_view target);

struct RawPage {
  std::string id;  // source WARC-Record-ID
  std::string url;
  std::string html;
  std::string crawl_id;
  std::vector<std::string> languages;
};

enum class SkipReason { empty_body, non_html, not_response, malformed_http };

std::string_view to_string(SkipReason r);

/// Signals that a record does not yield a page. Not a failure of the run.
class SkipPage : public std::runtime_error {
 public:
  explicit SkipPage(SkipReason reason)
      : std::runtime_error(std::string("skip: ") + std::string(to_string(reason))), reason_(reason) {}
  SkipReason reason() const { return reason_; }

 private:
  SkipReason reason_;
};

/// Strips HTTP headers and decodes the body as lossy UTF-8. Throws SkipPage.
RawPage to_raw_page(const WarcRecord& record, std::string_view crawl_id);

std::string page_to_json(const RawPage& page);
RawPage page_from_json(std::string_view line);

/// Writer side, used for fixtures and re-export.
struct RecordSpec {
  std::string warc_type = "response";
  std::string record_id;
  std::string target_url;
  std::string date = "2022-09-25T00:00:00Z";
  std::string languages;  // raw header value, omitted when empty
  std::string payload;
};

std::string serialize_record(const RecordSpec& spec);
std::string make_http_response(std::string_view body, std::string_view content_type = "text/html; charset=UTF-8");

}  // namespace shardwright::warc
