#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "shardwright/gzip.hpp"

namespace shardwright::io {

/// Line reader over a plain or gzip-compressed JSONL file. Blank lines are
/// skipped; the trailing newline is stripped.
class JsonlReader {
 public:
  explicit JsonlReader(const std::filesystem::path& path);
  bool next(std::string& line);
  std::size_t line_number() const { return line_no_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  InputFile file_;
  BufferedReader reader_;
  std::size_t line_no_ = 0;
};

/// Appends one record per line; gzip when the path ends in ".gz".
class JsonlWriter {
 public:
  explicit JsonlWriter(const std::filesystem::path& path);
  void write_line(std::string_view json);
  void close() { out_.close(); }
  std::uint64_t bytes_written() const { return out_.bytes_written(); }

 private:
  OutputFile out_;
};

}  // namespace shardwright::io
