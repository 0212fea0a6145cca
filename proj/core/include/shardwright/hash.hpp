#pragma once

#include <cstdint>
#include <string_view>

namespace shardwright {

inline constexpr std::uint64_t fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

/// 64-bit hash of a byte string (FNV-1a folded through the murmur3 finalizer).
std::uint64_t hash_bytes(std::string_view bytes, std::uint64_t seed = 0);

inline constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return fmix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

/// splitmix64 generator. Unlike the standard distributions its output is
/// identical on every platform, which the deterministic stages rely on.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound);

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace shardwright
