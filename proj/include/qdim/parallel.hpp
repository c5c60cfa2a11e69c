#pragma once

#include <cstddef>
#include <functional>

namespace qdim {

/// Worker count: hardware concurrency, capped by QDIM_THREADS when set.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
/// processed exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qdim
