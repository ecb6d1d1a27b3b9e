#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace masq {

inline unsigned default_thread_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Runs f(i) for i in [0, n) on up to `threads` workers. Callers write
/// results into index i of a preallocated container, so output order is
/// independent of scheduling.
template <class F>
void parallel_for(std::size_t n, F&& f, unsigned threads = 0) {
  if (threads == 0) threads = default_thread_count();
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      f(i);
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = unsigned(std::min<std::size_t>(threads, n));
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace masq
