#pragma once

#include <cstddef>
#include <functional>

namespace gq {

// Worker count: GIBBSQ_WORKERS if set, else hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n) on a small thread pool. Each index is an
// independent unit of work writing only to its own output slot, so results
// are deterministic regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gq
