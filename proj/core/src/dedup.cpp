#include "shardwright/dedup.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "json.hpp"
#include "shardwright/hash.hpp"
#include "shardwright/parallel.hpp"
#include "shardwright/text.hpp"

namespace shardwright::dedup {

namespace {

__extension__ typedef unsigned __int128 uint128;

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_mersenne61(uint128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kMersenne61);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t r = lo + hi;
  // hi can itself exceed 61 bits for 128-bit inputs; fold twice.
  r = (r & kMersenne61) + (r >> 61);
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

struct Permutation {
  std::uint64_t a;
  std::uint64_t b;
};

std::vector<Permutation> permutations(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Permutation> out(n);
  for (auto& p : out) {
    p.a = 1 + rng.uniform(kMersenne61 - 1);
    p.b = rng.uniform(kMersenne61);
  }
  return out;
}

}  // namespace

ShingleSet make_shingle_set(std::vector<std::uint64_t> hashes, std::size_t k) {
  std::sort(hashes.begin(), hashes.end());
  hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
  return ShingleSet{std::move(hashes), k};
}

ShingleSet shingle(std::string_view text, std::size_t k) {
  if (k == 0) throw std::invalid_argument("shingle size k must be >= 1");
  const auto lowered = text::to_lower(text);
  const auto ws = text::words(lowered);
  std::vector<std::uint64_t> hashes;
  if (ws.empty()) return ShingleSet{{}, k};
  std::string buf;
  auto window_hash = [&](std::size_t begin, std::size_t len) {
    buf.clear();
    for (std::size_t j = 0; j < len; ++j) {
      if (j) buf.push_back(' ');
      buf.append(ws[begin + j]);
    }
    return hash_bytes(buf);
  };
  if (ws.size() < k) {
    hashes.push_back(window_hash(0, ws.size()));
  } else {
    hashes.reserve(ws.size() - k + 1);
    for (std::size_t i = 0; i + k <= ws.size(); ++i) hashes.push_back(window_hash(i, k));
  }
  return make_shingle_set(std::move(hashes), k);
}

double exact_jaccard(const ShingleSet& a, const ShingleSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0, i = 0, j = 0;
  while (i < a.hashes.size() && j < b.hashes.size()) {
    if (a.hashes[i] == b.hashes[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a.hashes[i] < b.hashes[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

MinHashSignature minhash_signature(const ShingleSet& s, std::size_t num_perms, std::uint64_t seed) {
  if (num_perms == 0) throw std::invalid_argument("num_perms must be >= 1");
  MinHashSignature sig;
  sig.num_perms = num_perms;
  sig.seed = seed;
  sig.values.assign(num_perms, kSignatureSentinel);
  sig.empty = s.empty();
  if (sig.empty) return sig;
  const auto perms = permutations(num_perms, seed);
  for (const auto h : s.hashes) {
    const std::uint64_t x = mod_mersenne61(h);
    for (std::size_t i = 0; i < num_perms; ++i) {
      const auto v = mod_mersenne61(static_cast<uint128>(perms[i].a) * x + perms[i].b);
      if (v < sig.values[i]) sig.values[i] = v;
    }
  }
  return sig;
}

double estimate_jaccard(const MinHashSignature& x, const MinHashSignature& y) {
  if (x.num_perms != y.num_perms || x.seed != y.seed || x.values.size() != y.values.size()) {
    throw ParameterMismatch("signatures built with different num_perms or seed");
  }
  if (x.empty || y.empty) return (x.empty && y.empty) ? 1.0 : 0.0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < x.values.size(); ++i) agree += x.values[i] == y.values[i];
  return static_cast<double>(agree) / static_cast<double>(x.values.size());
}

void DedupParams::validate() const {
  if (k == 0) throw std::invalid_argument("dedup: k must be >= 1");
  if (num_perms == 0) throw std::invalid_argument("dedup: num_perms must be >= 1");
  if (bands == 0 || rows == 0 || bands * rows != num_perms) {
    throw std::invalid_argument("dedup: bands x rows must equal num_perms (" + std::to_string(bands) + " x " +
                                std::to_string(rows) + " != " + std::to_string(num_perms) + ")");
  }
  if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("dedup: threshold must be in (0,1]");
}

std::size_t DedupResult::removed() const {
  std::size_t n = 0;
  for (const auto& c : clusters) n += c.member_ids.size() - 1;
  return n;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
}

DedupResult dedup_crawl(const std::vector<InputDoc>& docs, const DedupParams& params) {
  params.validate();

  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return docs[a].id < docs[b].id; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (docs[order[i]].id == docs[order[i - 1]].id) {
      throw std::invalid_argument("dedup: duplicate document id " + docs[order[i]].id);
    }
  }
  const std::size_t n = order.size();

  std::vector<MinHashSignature> sigs(n);
  parallel_for(n, params.workers, [&](std::size_t i) {
    sigs[i] = minhash_signature(shingle(docs[order[i]].text, params.k), params.num_perms, params.seed);
  });

  // Per-band buckets, built independently and merged in band order.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> band_pairs(params.bands);
  parallel_for(params.bands, params.workers, [&](std::size_t band) {
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    const std::size_t lo = band * params.rows;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t key = hash_combine(0x51ed270b27b8a1c3ULL, band);
      for (std::size_t r = 0; r < params.rows; ++r) key = hash_combine(key, sigs[i].values[lo + r]);
      buckets[key].push_back(static_cast<std::uint32_t>(i));
    }
    auto& out = band_pairs[band];
    for (const auto& [key, members] : buckets) {
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) out.emplace_back(members[a], members[b]);
      }
    }
  });

  std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;
  for (auto& v : band_pairs) candidates.insert(candidates.end(), v.begin(), v.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  DisjointSets sets(n);
  for (const auto& [a, b] : candidates) {
    if (estimate_jaccard(sigs[a], sigs[b]) >= params.threshold) sets.unite(a, b);
  }

  // Indices are in id order, so the first member seen per root is the lowest id.
  std::unordered_map<std::size_t, std::vector<std::size_t>> groups;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = sets.find(i);
    auto [it, inserted] = groups.try_emplace(r);
    if (inserted) roots.push_back(r);
    it->second.push_back(i);
  }

  DedupResult result;
  result.candidate_pairs = candidates.size();
  for (const auto r : roots) {
    const auto& members = groups[r];
    result.kept_ids.push_back(docs[order[members.front()]].id);
    if (members.size() > 1) {
      DuplicateCluster c;
      for (const auto m : members) c.member_ids.push_back(docs[order[m]].id);
      c.representative_id = c.member_ids.front();
      result.clusters.push_back(std::move(c));
    }
  }
  return result;
}

std::string cluster_to_json(const DuplicateCluster& c) {
  nlohmann::ordered_json j;
  j["representative_id"] = c.representative_id;
  j["member_ids"] = c.member_ids;
  return j.dump();
}

}  // namespace shardwright::dedup
