#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bungee {

/// Runs body(k) for every k in [0, count) on up to `workers` threads.
///
/// Work items are claimed from a shared counter; callers write results to
/// position k only, so the outcome does not depend on scheduling. The first
/// exception thrown by any item is rethrown after all threads join.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  const auto n = static_cast<std::size_t>(workers) < count ? workers : static_cast<unsigned>(count);
  std::vector<std::jthread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(run);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

/// Default worker count: the hardware concurrency, at least 1.
inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace bungee
