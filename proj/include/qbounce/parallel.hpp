#pragma once

#include <cstddef>
#include <functional>

namespace qbounce {

// Worker count from QB_THREADS (unset or 0 = hardware concurrency).
unsigned thread_count();

// Calls body(i) for every i in [0, count), spread over thread_count()
// workers in contiguous blocks. Each index must write only its own output
// slot; results are then independent of scheduling. The first exception
// thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qbounce
