#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace mublp {

/// Worker count: explicit request > MUBLP_THREADS > hardware concurrency.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MUBLP_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(begin, end) over contiguous chunks of [0, n). Results must be
// merged by the caller in chunk order so the outcome is thread-count
// independent.
inline void parallel_chunks(std::size_t n, int threads,
                            const std::function<void(std::size_t, std::size_t, int)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    fn(0, n, 0);
    return;
  }
  std::size_t nchunks = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::size_t per = (n + nchunks - 1) / nchunks;
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t lo = c * per;
    std::size_t hi = std::min(n, lo + per);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi, static_cast<int>(c));
  }
  for (auto& t : pool) t.join();
}

}  // namespace mublp
