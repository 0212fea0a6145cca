#include "shardwright/gzip.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include <zlib.h>

namespace shardwright::io {

std::size_t IstreamSource::read(char* dst, std::size_t n) {
  in_->read(dst, static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in_->gcount());
}

struct GzipSource::State {
  z_stream zs{};
  std::array<char, 1 << 16> in{};
  bool in_member = false;
  bool inner_eof = false;
};

GzipSource::GzipSource(std::unique_ptr<ByteSource> inner)
    : inner_(std::move(inner)), state_(std::make_unique<State>()) {
  if (inflateInit2(&state_->zs, 15 + 16) != Z_OK) throw IoError("inflateInit2 failed");
}

GzipSource::~GzipSource() { inflateEnd(&state_->zs); }

std::size_t GzipSource::read(char* dst, std::size_t n) {
  auto& s = *state_;
  std::size_t produced = 0;
  while (produced < n) {
    if (s.zs.avail_in == 0 && !s.inner_eof) {
      const auto got = inner_->read(s.in.data(), s.in.size());
      if (got == 0) {
        s.inner_eof = true;
      } else {
        s.zs.next_in = reinterpret_cast<Bytef*>(s.in.data());
        s.zs.avail_in = static_cast<uInt>(got);
      }
    }
    if (s.zs.avail_in == 0 && s.inner_eof) {
      if (s.in_member) throw TruncatedStreamError("gzip stream ends inside a member");
      break;
    }
    s.in_member = true;
    s.zs.next_out = reinterpret_cast<Bytef*>(dst + produced);
    s.zs.avail_out = static_cast<uInt>(n - produced);
    const int rc = inflate(&s.zs, Z_NO_FLUSH);
    produced = n - s.zs.avail_out;
    if (rc == Z_STREAM_END) {
      s.in_member = false;
      inflateReset(&s.zs);
    } else if (rc == Z_BUF_ERROR) {
      // Needs more input; loop refills or detects truncation.
      continue;
    } else if (rc != Z_OK) {
      throw IoError(std::string("gzip inflate error: ") + (s.zs.msg ? s.zs.msg : "unknown"));
    }
  }
  return produced;
}

namespace {

class PrefixSource final : public ByteSource {
 public:
  PrefixSource(std::string prefix, std::unique_ptr<ByteSource> rest)
      : prefix_(std::move(prefix)), rest_(std::move(rest)) {}

  std::size_t read(char* dst, std::size_t n) override {
    if (pos_ < prefix_.size()) {
      const auto k = std::min(n, prefix_.size() - pos_);
      std::memcpy(dst, prefix_.data() + pos_, k);
      pos_ += k;
      return k;
    }
    return rest_->read(dst, n);
  }

 private:
  std::string prefix_;
  std::size_t pos_ = 0;
  std::unique_ptr<ByteSource> rest_;
};

}  // namespace

std::unique_ptr<ByteSource> auto_decompress(std::unique_ptr<ByteSource> raw) {
  std::string head(2, '\0');
  std::size_t got = 0;
  while (got < 2) {
    const auto k = raw->read(head.data() + got, 2 - got);
    if (k == 0) break;
    got += k;
  }
  head.resize(got);
  const bool gz = got == 2 && static_cast<unsigned char>(head[0]) == 0x1f &&
                  static_cast<unsigned char>(head[1]) == 0x8b;
  auto src = std::make_unique<PrefixSource>(std::move(head), std::move(raw));
  if (gz) return std::make_unique<GzipSource>(std::move(src));
  return src;
}

InputFile::InputFile(const std::filesystem::path& path)
    : file_(std::make_unique<std::ifstream>(path, std::ios::binary)) {
  if (!*file_) throw IoError("cannot open " + path.string());
  source_ = auto_decompress(std::make_unique<IstreamSource>(*file_));
}

BufferedReader::BufferedReader(ByteSource& src, std::size_t buffer_size)
    : src_(&src), buf_(buffer_size) {}

bool BufferedReader::fill() {
  if (src_done_) return false;
  if (pos_ < end_) return true;
  pos_ = 0;
  end_ = src_->read(buf_.data(), buf_.size());
  if (end_ == 0) src_done_ = true;
  return end_ > 0;
}

bool BufferedReader::eof() { return pos_ >= end_ && !fill(); }

bool BufferedReader::read_line(std::string& line) {
  line.clear();
  while (true) {
    if (pos_ >= end_ && !fill()) return !line.empty();
    const char* begin = buf_.data() + pos_;
    const char* stop = buf_.data() + end_;
    const char* nl = static_cast<const char*>(std::memchr(begin, '\n', static_cast<std::size_t>(stop - begin)));
    if (nl != nullptr) {
      const auto k = static_cast<std::size_t>(nl - begin) + 1;
      line.append(begin, k);
      pos_ += k;
      offset_ += k;
      return true;
    }
    const auto k = static_cast<std::size_t>(stop - begin);
    line.append(begin, k);
    pos_ += k;
    offset_ += k;
  }
}

std::size_t BufferedReader::read_exact(std::string& out, std::size_t n) {
  std::size_t copied = 0;
  while (copied < n) {
    if (pos_ >= end_ && !fill()) break;
    const auto k = std::min(n - copied, end_ - pos_);
    out.append(buf_.data() + pos_, k);
    pos_ += k;
    offset_ += k;
    copied += k;
  }
  return copied;
}

std::string read_all(ByteSource& src) {
  std::string out;
  std::array<char, 1 << 16> buf{};
  while (true) {
    const auto k = src.read(buf.data(), buf.size());
    if (k == 0) break;
    out.append(buf.data(), k);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  InputFile f(path);
  return read_all(f.source());
}

struct OutputFile::Deflater {
  z_stream zs{};
  std::array<char, 1 << 16> out{};
};

OutputFile::OutputFile(const std::filesystem::path& path, bool gzip)
    : file_(path, std::ios::binary | std::ios::trunc) {
  if (!file_) throw IoError("cannot open " + path.string() + " for writing");
  if (gzip) {
    deflater_ = std::make_unique<Deflater>();
    if (deflateInit2(&deflater_->zs, 6, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
      throw IoError("deflateInit2 failed");
    }
  }
}

OutputFile::~OutputFile() {
  try {
    close();
  } catch (...) {
  }
}

void OutputFile::write(std::string_view bytes) {
  if (closed_) throw IoError("write after close");
  uncompressed_ += bytes.size();
  if (!deflater_) {
    file_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!file_) throw IoError("write failed");
    return;
  }
  auto& d = *deflater_;
  d.zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  d.zs.avail_in = static_cast<uInt>(bytes.size());
  while (d.zs.avail_in > 0) {
    d.zs.next_out = reinterpret_cast<Bytef*>(d.out.data());
    d.zs.avail_out = static_cast<uInt>(d.out.size());
    deflate(&d.zs, Z_NO_FLUSH);
    file_.write(d.out.data(), static_cast<std::streamsize>(d.out.size() - d.zs.avail_out));
  }
  if (!file_) throw IoError("write failed");
}

void OutputFile::close() {
  if (closed_) return;
  closed_ = true;
  if (deflater_) {
    auto& d = *deflater_;
    d.zs.next_in = nullptr;
    d.zs.avail_in = 0;
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
      d.zs.next_out = reinterpret_cast<Bytef*>(d.out.data());
      d.zs.avail_out = static_cast<uInt>(d.out.size());
      rc = deflate(&d.zs, Z_FINISH);
      file_.write(d.out.data(), static_cast<std::streamsize>(d.out.size() - d.zs.avail_out));
    }
    deflateEnd(&d.zs);
    deflater_.reset();
  }
  file_.close();
  if (file_.fail()) throw IoError("close failed");
}

bool has_gzip_suffix(const std::filesystem::path& path) { return path.extension() == ".gz"; }

std::string gzip_compress(std::string_view bytes) {
  z_stream zs{};
  if (deflateInit2(&zs, 6, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw IoError("deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(bytes.size())) + 32, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  zs.avail_in = static_cast<uInt>(bytes.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw IoError("gzip compression failed");
  out.resize(zs.total_out);
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace shardwright::io
