#pragma once

#include <cstddef>
#include <functional>

namespace arraymirror {

// Worker count from ARRAYMIRROR_THREADS (0 or unset means hardware
// concurrency).
unsigned thread_count();

// Runs fn(i) for i in [0, n). Each index is handled by exactly one worker, so
// writing results to slot i keeps output order deterministic. An
// exception thrown by a worker is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace arraymirror
