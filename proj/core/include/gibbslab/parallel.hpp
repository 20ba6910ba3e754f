#pragma once

#include <cstddef>
#include <functional>

namespace gibbslab {

/// Worker count used by the enumeration kernels. Defaults to the
/// GIBBSLAB_THREADS environment variable, else 1.
std::size_t threadCount();
void setThreadCount(std::size_t n);

/// Splits [0, n) into `chunks` contiguous ranges and runs fn(chunk, begin,
/// end) for each, spread over threadCount() workers. Chunk boundaries depend
/// only on n and `chunks`, never on the worker count.
void parallelChunks(std::size_t n, std::size_t chunks,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace gibbslab
