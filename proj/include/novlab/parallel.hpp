#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace novlab {

/// Worker count: $NOVLAB_THREADS when set to a positive integer, else the hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, count) on up to worker_count() threads. Each index
/// runs exactly once; the first exception thrown by any call is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace novlab
