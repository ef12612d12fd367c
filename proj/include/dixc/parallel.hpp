#pragma once

#include <cstddef>
#include <functional>

namespace dixc {

// Worker count: DIXC_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Calls fn(i) for every i in [0, count) on up to worker_count() threads.
// Each index is visited exactly once; callers write results into
// pre-sized slots so the outcome is independent of scheduling. The first
// exception thrown by any call is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace dixc
