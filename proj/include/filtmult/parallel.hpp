#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace filtmult {

/// Worker count from FILTMULT_THREADS: unset means hardware concurrency, 0 or
/// 1 means serial.
unsigned configured_threads();

/// Runs body(i) for i in [0, count). Results must be written by index; the
/// exception of the lowest failing index is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace filtmult
