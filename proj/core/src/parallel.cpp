#include "nclass/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nclass {

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("GAUSS_NCLASS_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap > 0) n = std::min(n, cap);
    } catch (...) {
      // ignore malformed values, keep the hardware default
    }
  }
  return n;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& f) {
  if (n <= 0) return;
  const int workers = std::min<std::int64_t>(worker_count(), n);
  if (workers == 1) {
    for (std::int64_t i = 0; i < n; ++i) f(i);
    return;
  }

  // Fixed chunk grid: indices map to chunks the same way for any worker count.
  const std::int64_t chunks = std::min<std::int64_t>(n, 64);
  const std::int64_t chunk_size = (n + chunks - 1) / chunks;
  std::atomic<std::int64_t> next_chunk{0};

  auto run = [&] {
    for (;;) {
      const std::int64_t c = next_chunk.fetch_add(1);
      if (c >= chunks) return;
      const std::int64_t lo = c * chunk_size;
      const std::int64_t hi = std::min(n, lo + chunk_size);
      for (std::int64_t i = lo; i < hi; ++i) f(i);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

}  // namespace nclass
