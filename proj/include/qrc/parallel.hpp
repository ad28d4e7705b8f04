#pragma once

#include <cstddef>
#include <functional>

namespace qrc {

/// Worker count: QRCBENCH_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Work is
/// handed out by index, so callers that write results into slot i get output
/// independent of the thread count. The first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qrc
