#pragma once

// Deterministic parallel map: workers fill preallocated slots by index and
// every reduction afterwards runs sequentially, so output bytes do not depend
// on the thread count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace lietaylor {

inline int& thread_count_ref() {
  static int n = 1;
  return n;
}

inline void set_thread_count(int n) { thread_count_ref() = std::max(1, n); }
inline int thread_count() { return thread_count_ref(); }

inline void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body) {
  int workers = std::min<std::int64_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace lietaylor
