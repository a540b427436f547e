#pragma once

#include <cstddef>
#include <functional>

namespace pabn {

/// Effective worker count: `requested` if > 0, else the PABN_THREADS
/// environment variable if set, else hardware concurrency.
int resolve_thread_count(int requested);

/// Runs fn(begin, end) over [0, n) split into fixed-size chunks.
/// Chunk boundaries depend only on n and chunk_size, never on the worker
/// count, so per-chunk results can be combined in chunk order to give
/// thread-count-independent reductions.
void parallel_chunks(std::size_t n, std::size_t chunk_size, int nthreads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace pabn
