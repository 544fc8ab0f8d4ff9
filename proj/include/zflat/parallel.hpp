#pragma once

#include <algorithm>
#include <thread>
#include <vector>

#include "zflat/subset.hpp"

namespace zflat {

/// Folds `body(acc, x)` over x in [0, count), splitting the range into `threads` contiguous chunks.
/// Chunk results are merged left to right, so the outcome does not depend on the thread count as long
/// as `merge` is associative.
template <class T, class Body, class Merge>
T parallel_reduce_masks(Mask count, int threads, T init, Body&& body, Merge&& merge) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 4096) {
    T acc = init;
    for (Mask x = 0; x < count; ++x) body(acc, x);
    return acc;
  }
  std::vector<T> partial(threads, init);
  std::vector<std::thread> pool;
  const Mask chunk = (count + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      const Mask begin = chunk * w;
      const Mask end = std::min(count, begin + chunk);
      for (Mask x = begin; x < end; ++x) body(partial[w], x);
    });
  }
  for (auto& th : pool) th.join();
  T acc = std::move(partial[0]);
  for (int w = 1; w < threads; ++w) merge(acc, partial[w]);
  return acc;
}

}  // namespace zflat
