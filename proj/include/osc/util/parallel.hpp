#pragma once

#include <cstddef>
#include <functional>

namespace osc {

// Worker count: OSC_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n). Work is split into contiguous chunks, one per
// worker; the call returns after every chunk finishes. The first exception
// thrown by any chunk is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace osc
