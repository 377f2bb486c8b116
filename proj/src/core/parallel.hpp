#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace polar {

// Worker count used by the exhaustive scans. 0 means "hardware concurrency".
void set_thread_count(int n);
int thread_count();
int effective_threads();

// Splits [0, total) into fixed-size chunks and calls fn(chunk_index, begin,
// end) for each, possibly from several threads. Chunk boundaries depend only
// on total and grain — never on the worker count — so callers that store one
// partial result per chunk and merge the slots in chunk order get answers that
// are identical for any thread count.
template <class Fn>
void parallel_chunks(std::size_t total, std::size_t grain, Fn&& fn) {
  if (total == 0) return;
  if (grain == 0) grain = 1;
  const std::size_t nchunks = (total + grain - 1) / grain;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(effective_threads()), nchunks);

  if (workers <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) {
      const std::size_t b = c * grain;
      fn(c, b, std::min(total, b + grain));
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks || failed.load(std::memory_order_relaxed)) return;
      const std::size_t b = c * grain;
      try {
        fn(c, b, std::min(total, b + grain));
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace polar
