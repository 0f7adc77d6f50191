#pragma once

#include <cstddef>
#include <functional>

namespace circlet {

// Worker count: CIRCLET_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int thread_count();

// Calls body(i) for i in [0, n) across worker threads. Each index is
// visited exactly once; the first exception thrown is rethrown here after
// all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace circlet
