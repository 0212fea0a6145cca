#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shardwright::io {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a compressed stream ends in the middle of a member.
class TruncatedStreamError : public IoError {
 public:
  using IoError::IoError;
};

class ByteSource {
 public:
  virtual ~ByteSource() = default;
  /// Reads up to `n` bytes; returns 0 only at end of stream.
  virtual std::size_t read(char* dst, std::size_t n) = 0;
};

class IstreamSource final : public ByteSource {
 public:
  explicit IstreamSource(std::istream& in) : in_(&in) {}
  std::size_t read(char* dst, std::size_t n) override;

 private:
  std::istream* in_;
};

/// Inflates a stream of one or more concatenated gzip members.
class GzipSource final : public ByteSource {
 public:
  explicit GzipSource(std::unique_ptr<ByteSource> inner);
  ~GzipSource() override;
  GzipSource(const GzipSource&) = delete;
  GzipSource& operator=(const GzipSource&) = delete;

  std::size_t read(char* dst, std::size_t n) override;

 private:
  struct State;
  std::unique_ptr<ByteSource> inner_;
  std::unique_ptr<State> state_;
};

/// Non-owning view of another source.
class BorrowedSource final : public ByteSource {
 public:
  explicit BorrowedSource(ByteSource& inner) : inner_(&inner) {}
  std::size_t read(char* dst, std::size_t n) override { return inner_->read(dst, n); }

 private:
  ByteSource* inner_;
};

/// Wraps a source and transparently inflates it when it starts with the
/// gzip magic bytes.
std::unique_ptr<ByteSource> auto_decompress(std::unique_ptr<ByteSource> raw);

/// Opens a file for reading, inflating gzip content when detected.
class InputFile {
 public:
  explicit InputFile(const std::filesystem::path& path);
  ByteSource& source() { return *source_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::unique_ptr<ByteSource> source_;
};

/// Buffered reader over a ByteSource tracking the logical byte offset.
class BufferedReader {
 public:
  explicit BufferedReader(ByteSource& src, std::size_t buffer_size = 1 << 16);

  /// Reads through the next '\n' (included). Returns false at EOF with no data.
  bool read_line(std::string& line);
  /// Appends exactly n bytes; returns the number actually appended.
  std::size_t read_exact(std::string& out, std::size_t n);
  bool eof();
  std::uint64_t offset() const { return offset_; }

 private:
  bool fill();

  ByteSource* src_;
  std::vector<char> buf_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  std::uint64_t offset_ = 0;
  bool src_done_ = false;
};

std::string read_all(ByteSource& src);
std::string read_file(const std::filesystem::path& path);

/// Byte sink that writes plain or gzip-compressed output. Gzip headers carry
/// no timestamp, so identical input yields identical bytes.
class OutputFile {
 public:
  OutputFile(const std::filesystem::path& path, bool gzip);
  ~OutputFile();
  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;

  void write(std::string_view bytes);
  void close();
  std::uint64_t bytes_written() const { return uncompressed_; }

 private:
  struct Deflater;
  std::ofstream file_;
  std::unique_ptr<Deflater> deflater_;
  std::uint64_t uncompressed_ = 0;
  bool closed_ = false;
};

bool has_gzip_suffix(const std::filesystem::path& path);

/// Compresses a buffer into a single gzip member.
std::string gzip_compress(std::string_view bytes);

/// Writes `bytes` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace shardwright::io
