#pragma once

#include <cstddef>
#include <functional>

namespace usc_trio {

/// Worker count: USC_TRIO_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Indices are
/// handed out dynamically; callers write results by index, so output order
/// never depends on scheduling. The exception from the lowest failing index
/// is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace usc_trio
