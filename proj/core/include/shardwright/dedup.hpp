#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shardwright::dedup {

/// Hashes of the distinct k-word shingles of a document.
struct ShingleSet {
  std::vector<std::uint64_t> hashes;  // sorted, unique
  std::size_t k = 5;

  std::size_t size() const { return hashes.size(); }
  bool empty() const { return hashes.empty(); }
};

/// Builds a set from arbitrary hashes (sorts and deduplicates).
ShingleSet make_shingle_set(std::vector<std::uint64_t> hashes, std::size_t k);

/// Lowercased UAX-29 words, windows of k joined by single spaces. Texts with
/// fewer than k words yield one shingle of all their words.
ShingleSet shingle(std::string_view text, std::size_t k);

double exact_jaccard(const ShingleSet& a, const ShingleSet& b);

struct MinHashSignature {
  std::vector<std::uint64_t> values;
  std::size_t num_perms = 0;
  std::uint64_t seed = 0;
  bool empty = false;  // built from an empty set; all values are the sentinel
};

inline constexpr std::uint64_t kSignatureSentinel = std::numeric_limits<std::uint64_t>::max();

/// values[i] = min over the set of h_i(x), with h_i(x) = (a_i * x + b_i) mod (2^61 - 1)
/// and (a_i, b_i) drawn from a splitmix64 stream seeded with `seed`.
MinHashSignature minhash_signature(const ShingleSet& s, std::size_t num_perms, std::uint64_t seed);

class ParameterMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fraction of agreeing positions. Two empty signatures estimate 1.0; one
/// empty and one non-empty estimate 0.0.
double estimate_jaccard(const MinHashSignature& x, const MinHashSignature& y);

struct DedupParams {
  std::size_t k = 5;
  std::size_t num_perms = 128;
  std::uint64_t seed = 1;
  std::size_t bands = 16;
  std::size_t rows = 8;
  double threshold = 0.8;
  std::size_t workers = 1;

  void validate() const;
};

struct DuplicateCluster {
  std::string representative_id;
  std::vector<std::string> member_ids;  // sorted; front() == representative_id
};

struct InputDoc {
  std::string id;
  std::string_view text;
};

struct DedupResult {
  std::vector<std::string> kept_ids;  // sorted
  std::vector<DuplicateCluster> clusters;  // sorted by representative
  std::size_t candidate_pairs = 0;
  std::size_t removed() const;
};

/// Near-duplicate removal within one crawl. LSH banding proposes candidate
/// pairs, pairs whose estimate reaches the threshold are merged with
/// union-find, and each cluster keeps its lowest id. Output does not depend
/// on input order or worker count. Throws on inconsistent parameters or
/// duplicate ids before doing any work.
DedupResult dedup_crawl(const std::vector<InputDoc>& docs, const DedupParams& params);

std::string cluster_to_json(const DuplicateCluster& c);

/// Plain union-find over dense indices.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

}  // namespace shardwright::dedup
