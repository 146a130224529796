#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qorth {

/// Worker count: `requested` if nonzero, else QORTH_THREADS, else the
/// hardware concurrency.
inline unsigned resolve_thread_count(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (char const* env = std::getenv("QORTH_THREADS")) {
    try {
      int const v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (std::exception const&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n) over contiguous blocks. Each index is visited
/// exactly once, so results written to per-index slots are independent of the
/// thread count.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, unsigned threads = 0) {
  unsigned const workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_thread_count(threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  std::size_t const block = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t const begin = w * block;
    std::size_t const end = std::min(n, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qorth
