#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace stochkg::runner {

/// Calls body(i) for i in [0, n) on contiguous chunks across `workers` threads. Results
/// must be written to per-index slots so the outcome does not depend on the split.
/// The exception of the lowest failing chunk is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  if (w == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  {
    std::vector<std::jthread> pool;
    pool.reserve(w);
    for (std::size_t c = 0; c < w; ++c) {
      pool.emplace_back([&, c] {
        try {
          for (std::size_t i = n * c / w; i < n * (c + 1) / w; ++i) body(i);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace stochkg::runner
