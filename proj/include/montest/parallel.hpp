#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace montest {

/// Runs body(begin, end) over `threads` contiguous chunks of [0, count).
/// Chunk boundaries depend only on (count, threads); callers write results by
/// index so output order never depends on scheduling. The first exception
/// thrown by any chunk is rethrown.
template <class Body>
void parallel_chunks(std::size_t count, int threads, Body&& body) {
  const std::size_t workers =
      std::clamp<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads), 1,
                              std::max<std::size_t>(count, 1));
  if (workers == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace montest
