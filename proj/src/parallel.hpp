#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace pdsample::detail {

// Splits [0, count) into contiguous chunks, one per worker. Work items must be
// independent; results depend only on the item index.
template <typename Fn>
void parallel_for(long count, int threads, Fn&& fn) {
  const long workers = std::max(1L, std::min<long>(threads, count));
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const long chunk = (count + workers - 1) / workers;
  for (long w = 0; w < workers; ++w) {
    const long lo = w * chunk;
    const long hi = std::min(count, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (long i = lo; i < hi; ++i) fn(i);
    });
  }
}

}  // namespace pdsample::detail
