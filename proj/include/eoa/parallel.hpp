#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

#include "eoa/types.hpp"

namespace eoa {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work items must
// be independent; results land wherever fn writes them, so output order is
// the caller's index order regardless of scheduling.
inline void parallel_for(Index count, int jobs, const std::function<void(Index)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<Index>(jobs, count));
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (Index i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (std::thread& t : pool) t.join();
}

}  // namespace eoa
