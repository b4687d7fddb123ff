#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace fibroots {

// Default worker count: FIBROOTS_WORKERS env var if set, else hardware
// concurrency, never less than 1.
inline unsigned default_worker_count() {
  if (const char* env = std::getenv("FIBROOTS_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

// Runs fn(i) for every chunk index i in [0, chunk_count) on up to `workers`
// threads. Chunk boundaries are fixed by the caller, so the per-chunk outputs
// (and anything merged in chunk order) are identical for any worker count.
template <typename Fn>
void run_chunked(std::size_t chunk_count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || chunk_count <= 1) {
    for (std::size_t i = 0; i < chunk_count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next.fetch_add(1); i < chunk_count;
         i = next.fetch_add(1)) {
      fn(i);
    }
  };
  std::size_t n = std::min<std::size_t>(workers, chunk_count);
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(drain);
  for (auto& th : pool) th.join();
}

}  // namespace fibroots
