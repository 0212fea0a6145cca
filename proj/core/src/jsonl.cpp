#include "shardwright/jsonl.hpp"

namespace shardwright::io {

JsonlReader::JsonlReader(const std::filesystem::path& path)
    : path_(path), file_(path), reader_(file_.source()) {}

bool JsonlReader::next(std::string& line) {
  while (reader_.read_line(line)) {
    ++line_no_;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

JsonlWriter::JsonlWriter(const std::filesystem::path& path) : out_(path, has_gzip_suffix(path)) {}

void JsonlWriter::write_line(std::string_view json) {
  out_.write(json);
  out_.write("\n");
}

}  // namespace shardwright::io
