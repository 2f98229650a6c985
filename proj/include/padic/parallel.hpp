#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace padic {

/// Runs fn(0..nshards-1), striping shards across `threads` workers. Each
/// shard writes only its own output slot, so results are identical for any
/// thread count. The first shard exception is rethrown on the caller.
inline void run_sharded(long nshards, int threads, const std::function<void(long)>& fn) {
  if (threads <= 1 || nshards <= 1) {
    for (long s = 0; s < nshards; ++s) fn(s);
    return;
  }
  const int workers = static_cast<int>(std::min<long>(threads, nshards));
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (long s = t; s < nshards; s += workers) {
        try {
          fn(s);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace padic
