#pragma once

#include <cstddef>
#include <functional>

namespace hyperblock {

/// Worker count: HYPERBLOCK_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned thread_count();

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// body(begin, end, worker) on each. Returns after all chunks finish;
/// the first exception thrown by any chunk is rethrown.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, unsigned)> &body);

} // namespace hyperblock
