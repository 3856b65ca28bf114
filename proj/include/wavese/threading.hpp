#pragma once

#include <cstddef>
#include <functional>

namespace wavese {

// Global cap on worker threads used by the row-parallel maps (0 = hardware
// concurrency). Results are bitwise-independent of this setting: each row is
// computed by exactly one worker with a fixed in-row summation order, and
// cross-row reductions happen sequentially in row order.
void set_max_threads(std::size_t n);
std::size_t max_threads();

// Runs fn(row) for row in [0, n_rows), distributing rows over workers.
void parallel_rows(std::size_t n_rows, const std::function<void(std::size_t)>& fn);

} // namespace wavese
