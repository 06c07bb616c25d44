#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rpz {

// Process-wide worker cap; the CLI's --threads flag sets this.
inline int& thread_cap() {
  static int cap = 0;  // 0 = hardware_concurrency
  return cap;
}

inline int effective_threads(std::size_t n) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int cap = thread_cap() > 0 ? thread_cap() : hw;
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cap), std::max<std::size_t>(n, 1)));
}

// Runs fn(begin, end) on contiguous chunks of [0, n). Chunk boundaries
// depend only on (n, thread count), so per-chunk accumulators can be
// combined in index order for deterministic reductions.
inline void parallel_for_chunks(std::size_t n,
                                const std::function<void(std::size_t, std::size_t, int)>& fn) {
  const int t = effective_threads(n);
  if (t <= 1 || n == 0) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(t));
  const std::size_t base = n / static_cast<std::size_t>(t);
  const std::size_t rem = n % static_cast<std::size_t>(t);
  std::size_t begin = 0;
  for (int i = 0; i < t; ++i) {
    const std::size_t len = base + (static_cast<std::size_t>(i) < rem ? 1 : 0);
    const std::size_t end = begin + len;
    workers.emplace_back([&fn, begin, end, i] { fn(begin, end, i); });
    begin = end;
  }
  for (auto& w : workers) w.join();
}

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  parallel_for_chunks(n, [&fn](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) fn(i);
  });
}

}  // namespace rpz
