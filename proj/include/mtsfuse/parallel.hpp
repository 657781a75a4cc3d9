#pragma once

#include <cstddef>
#include <functional>

namespace mtsfuse {

/// Runs fn(0..n-1), either serially (threads <= 1) or on a pool. Tasks must
/// write only to their own output slot; combined with per-task RNG streams
/// this keeps results identical for every thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads);

}  // namespace mtsfuse
