#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace fbmsig {

/// Worker count: FBMSIG_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int default_thread_count();

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Exceptions thrown by fn are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

/// Neumaier-compensated sum in index order.
double compensated_sum(std::span<const double> values);

}  // namespace fbmsig
