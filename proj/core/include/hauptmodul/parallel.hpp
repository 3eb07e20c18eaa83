#ifndef HAUPTMODUL_PARALLEL_HPP
#define HAUPTMODUL_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hm {

/* Runs fn(i) for 0 <= i < n across `threads` workers (clamped to n; <= 1
 * runs inline).  The first exception is rethrown after all workers join.
 * Callers keep results deterministic by writing into slot i of a
 * pre-sized container. */
template <typename F> void parallel_for(long n, int threads, F &&fn) {
  if (n <= 0)
    return;
  if (threads > n)
    threads = int(n);
  if (threads <= 1) {
    for (long i = 0; i < n; ++i)
      fn(i);
    return;
  }

  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed))
        return;
      long i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n)
        return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err)
          err = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back(work);
  for (auto &th : pool)
    th.join();
  if (err)
    std::rethrow_exception(err);
}

} // namespace hm

#endif
