#pragma once

#include <cstddef>
#include <functional>

namespace fieldscope {

/// Worker threads used for sampling: FIELDSCOPE_THREADS when it holds a
/// positive integer (at most 256), else the hardware concurrency.
std::size_t worker_count();

/**
 * Runs body(chunk) for every chunk in [0, n_chunks) on up to worker_count()
 * threads. Chunks are claimed dynamically; callers write results into
 * per-chunk slots so the outcome does not depend on scheduling. The first
 * exception thrown by a chunk is rethrown after all workers join.
 */
void parallel_for_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& body);

} // namespace fieldscope
