#pragma once

#include <cstddef>
#include <functional>

namespace mhdci {

// Number of worker threads used by parallel_for.  Initialized once from the
// MHD_THREADS environment variable (default: 1).  All reductions in the code
// base are performed either serially or as an ordered combine over fixed
// chunk boundaries, so results are independent of the thread count.
int thread_count();

// Overrides the thread count (used by tests and the CLI).
void set_thread_count(int n);

// Runs fn(begin, end) over disjoint chunks of [0, n).  Chunk boundaries
// depend only on n and the configured thread count, never on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace mhdci
