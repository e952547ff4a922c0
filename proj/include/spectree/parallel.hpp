#pragma once

#include <cstddef>
#include <functional>

namespace spectree {

/// SPECTREE_JOBS if set to a positive integer, else the hardware thread count.
int default_jobs();

/// Runs fn(0..n-1) on up to `jobs` threads. Indices are handed out in order;
/// callers write results by index so the outcome does not depend on
/// scheduling. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace spectree
