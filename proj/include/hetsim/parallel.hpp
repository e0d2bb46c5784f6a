#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hetsim {

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Each index is processed exactly once; callers that write
/// results into a per-index slot and reduce sequentially afterwards get
/// thread-count-independent output. The first exception thrown by any worker
/// is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::uint64_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (n < threads) threads = static_cast<unsigned>(n ? n : 1);

  if (threads <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    constexpr std::uint64_t chunk = 64;
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t begin = next.fetch_add(chunk, std::memory_order_relaxed);
      if (begin >= n) break;
      const std::uint64_t end = begin + chunk < n ? begin + chunk : n;
      try {
        for (std::uint64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();  // join

  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hetsim
