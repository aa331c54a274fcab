#pragma once

#include <cstddef>
#include <functional>

namespace rrvqa {

// Number of workers actually used for `requested` (0 = all hardware threads).
int resolve_thread_count(int requested);

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work is split
// into contiguous index ranges; each index is processed exactly once. Callers
// must write results into per-index slots so that numeric output is identical
// for any worker count. Exceptions are captured and rethrown on the caller.
void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn);

}  // namespace rrvqa
