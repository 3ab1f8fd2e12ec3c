#pragma once

#include <cstddef>
#include <functional>

namespace ssfm {

// Resolves a --threads value; 0 means one worker per hardware thread.
int resolve_threads(int requested);

// Runs body(i) for i in [0, count) on up to `threads` workers. Callers write
// results into per-index slots, so output never depends on scheduling. The
// first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace ssfm
