#pragma once

#include <cstddef>
#include <functional>

namespace xlab {

/// Worker count: XLAB_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, n), spread over thread_count() workers in
/// contiguous blocks. body must only write to slots it owns (index i), so
/// any reduction done afterwards in index order is independent of the
/// thread count. Exceptions thrown by body are rethrown on the caller.
/// Calls made from inside a worker run serially on that worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace xlab
