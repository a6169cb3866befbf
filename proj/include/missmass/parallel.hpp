#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace missmass {

/// Calls body(i) for every i in [0, count), spread over `workers` threads in
/// contiguous blocks. body must only write to state owned by index i.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t blocks = std::min<std::size_t>(workers, count);
  std::vector<std::jthread> pool;
  pool.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = count * b / blocks;
    const std::size_t hi = count * (b + 1) / blocks;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
}

}  // namespace missmass
