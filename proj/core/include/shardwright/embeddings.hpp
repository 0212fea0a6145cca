#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace shardwright::quality {

/// Binary layout ("EMBV1"): the 5 magic bytes, u32 dim, u64 count, then per
/// record a u16 id length, the UTF-8 id and dim f32 values. Little-endian.
inline constexpr std::string_view kEmbeddingMagic = "EMBV1";

class EmbeddingFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  explicit EmbeddingMatrix(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }

  /// Throws on duplicate id, wrong length or non-finite values.
  void add(std::string id, std::span<const float> vector);

  std::span<const float> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  /// Empty span when the id is unknown.
  std::span<const float> find(std::string_view id) const;
  bool contains(std::string_view id) const { return index_.contains(std::string(id)); }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

EmbeddingMatrix parse_embeddings(std::string_view bytes);
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);

std::string serialize_embeddings(const EmbeddingMatrix& m);
void write_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& m);

}  // namespace shardwright::quality
