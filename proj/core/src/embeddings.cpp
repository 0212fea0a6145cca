#include "shardwright/embeddings.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "shardwright/gzip.hpp"

namespace shardwright::quality {

namespace {

static_assert(std::endian::native == std::endian::little, "EMBV1 I/O assumes a little-endian host");

template <typename T>
T read_le(std::string_view bytes, std::size_t& pos, const char* what) {
  if (bytes.size() - pos < sizeof(T)) {
    throw EmbeddingFormatError(std::string("truncated embedding file while reading ") + what);
  }
  T v;
  std::memcpy(&v, bytes.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

template <typename T>
void write_le(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

}  // namespace

void EmbeddingMatrix::add(std::string id, std::span<const float> vector) {
  if (vector.size() != dim_) {
    throw EmbeddingFormatError("vector for " + id + " has length " + std::to_string(vector.size()) +
                               ", expected " + std::to_string(dim_));
  }
  for (const float v : vector) {
    if (!std::isfinite(v)) throw EmbeddingFormatError("non-finite value in vector for " + id);
  }
  if (index_.contains(id)) throw EmbeddingFormatError("duplicate embedding id " + id);
  index_.emplace(id, ids_.size());
  ids_.push_back(std::move(id));
  data_.insert(data_.end(), vector.begin(), vector.end());
}

std::span<const float> EmbeddingMatrix::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return {};
  return row(it->second);
}

EmbeddingMatrix parse_embeddings(std::string_view bytes) {
  if (!bytes.starts_with(kEmbeddingMagic)) throw EmbeddingFormatError("bad magic: not an EMBV1 file");
  std::size_t pos = kEmbeddingMagic.size();
  const auto dim = read_le<std::uint32_t>(bytes, pos, "dim");
  const auto count = read_le<std::uint64_t>(bytes, pos, "count");
  if (dim == 0) throw EmbeddingFormatError("dim must be >= 1");
  if (count > 0 && (bytes.size() - pos) / sizeof(float) < dim) {
    throw EmbeddingFormatError("truncated embedding file: payload smaller than one vector");
  }
  EmbeddingMatrix m(dim);
  std::vector<float> buf(count > 0 ? dim : 0);
  for (std::uint64_t r = 0; r < count; ++r) {
    const auto id_len = read_le<std::uint16_t>(bytes, pos, "id length");
    if (bytes.size() - pos < id_len) throw EmbeddingFormatError("truncated embedding file while reading id");
    std::string id(bytes.substr(pos, id_len));
    pos += id_len;
    if (bytes.size() - pos < std::size_t{dim} * sizeof(float)) {
      throw EmbeddingFormatError("truncated embedding file: record " + std::to_string(r) + " of " +
                                 std::to_string(count));
    }
    std::memcpy(buf.data(), bytes.data() + pos, std::size_t{dim} * sizeof(float));
    pos += std::size_t{dim} * sizeof(float);
    m.add(std::move(id), buf);
  }
  if (pos != bytes.size()) {
    throw EmbeddingFormatError("payload has " + std::to_string(bytes.size() - pos) +
                               " trailing bytes beyond header count");
  }
  return m;
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_embeddings(bytes);
}

std::string serialize_embeddings(const EmbeddingMatrix& m) {
  std::string out(kEmbeddingMagic);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.dim()));
  write_le<std::uint64_t>(out, m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& id = m.ids()[i];
    if (id.size() > 0xFFFF) throw EmbeddingFormatError("id longer than 65535 bytes");
    write_le<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
    out += id;
    const auto r = m.row(i);
    out.append(reinterpret_cast<const char*>(r.data()), r.size() * sizeof(float));
  }
  return out;
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& m) {
  io::write_file_atomic(path, serialize_embeddings(m));
}

}  // namespace shardwright::quality
