#pragma once

#include <cstddef>
#include <functional>

namespace matgraph {

/// Worker count to use for `requested` (0 means hardware concurrency, at least 1).
[[nodiscard]] int resolve_threads(int requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// executed exactly once; results must be written to per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace matgraph
