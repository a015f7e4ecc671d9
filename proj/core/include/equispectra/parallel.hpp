#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace equispectra {

/// Worker threads to use: hardware concurrency, capped by EQUISPECTRA_THREADS.
std::size_t worker_count();

/// Independent seed for task `index`, so results do not depend on scheduling.
std::uint64_t task_seed(std::uint64_t seed, std::uint64_t index);

/// Runs f(i) for i in [0, count). Tasks are handed out in contiguous stripes;
/// the first exception thrown by any task is rethrown on the caller's thread.
template <class F>
void parallel_for(std::size_t count, F&& f) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) f(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace equispectra
