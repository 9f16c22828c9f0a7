#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace obstruct {

/// Worker threads for internal parallel loops: set_thread_count() if called
/// with a nonzero value, else OBSTRUCT_THREADS, else hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned threads);

/// Seed of stream `stream` derived from a user seed (splitmix64 finaliser
/// applied to seed + (stream + 1) * golden-ratio increment). Used to give
/// every sample block its own generator, so results do not depend on how
/// blocks are distributed over threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Calls body(block) for every block in [0, n_blocks), spread over worker
/// threads. Callers store per-block results and merge them in block order.
template <class Body>
void parallel_for_blocks(std::size_t n_blocks, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), n_blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      try {
        body(b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_blocks);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace obstruct
