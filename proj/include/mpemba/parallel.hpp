#pragma once

#include <cstddef>
#include <functional>

namespace mpemba {

/// Worker count for grid scans: MPEMBA_THREADS if set (clamped to >= 1),
/// otherwise hardware concurrency.
std::size_t scan_thread_count();

/// Runs fn(i) for i in [0, n) on the scan worker pool. Callers write results
/// into preallocated slots indexed by i, so output is deterministic for any
/// thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mpemba
