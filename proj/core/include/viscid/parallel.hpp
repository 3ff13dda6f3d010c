#pragma once

#include <cstddef>
#include <functional>

namespace viscid {

/// Worker cap from VISCID_THREADS (0 or unset = hardware concurrency).
unsigned thread_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and `grain`, never on the thread count, so any
/// per-chunk computation is reproducible.
void parallel_for(std::size_t n, std::size_t grain, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace viscid
