#pragma once

// Minimal work-sharing helper for the counting engines.  Tasks are indexed;
// workers pull indices from a shared counter, so callers obtain deterministic
// results by writing task i's output into slot i of a preallocated buffer
// and merging in index order afterwards.

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gns {

// Runs fn(0), ..., fn(n-1) on up to `threads` workers (clamped to [1, n]).
// The first exception stops the pool and is rethrown on the calling thread.
inline void run_indexed_tasks(size_t n, int threads, const std::function<void(size_t)>& fn) {
  if (n == 0) return;
  size_t workers = threads < 1 ? 1 : static_cast<size_t>(threads);
  workers = std::min(workers, n);
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lk(err_mu);
        if (!err) err = std::current_exception();
        next.store(n);  // drain remaining work
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace gns
