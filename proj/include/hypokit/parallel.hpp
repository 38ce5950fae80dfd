#pragma once

#include <cstddef>
#include <functional>

namespace hypokit {

// Worker count: hardware concurrency, capped by HYPOKIT_THREADS when set.
int thread_count();

// Runs fn(i) for i in [0, n). Each index is handled exactly once; callers
// write results into preallocated slots so output order is fixed.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hypokit
