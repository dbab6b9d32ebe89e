#pragma once

#include <cstddef>
#include <functional>

namespace maxwalk {

/// Worker cap: MAXWALK_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();
/// Override for tests and the CLI. 0 restores the environment default.
void set_thread_count(unsigned n);

/// Calls body(begin, end) over a static partition of [0, n) into at most
/// thread_count() contiguous chunks of at least `grain` items.
/// Partition affects scheduling only; callers keep per-index work independent.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

} // namespace maxwalk
