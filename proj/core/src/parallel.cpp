#include "shardwright/parallel.hpp"

#include <cstdlib>
#include <string>

namespace shardwright {

std::size_t default_worker_count() {
  if (const char* env = std::getenv("SHARDWRIGHT_WORKERS"); env != nullptr && *env != '\0') {
    try {
      const auto n = std::stoul(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace shardwright
