#pragma once

#include <cstddef>
#include <functional>

namespace fatpoints {

// Worker count: min(hardware_concurrency, FATPOINT_THREADS if set). At least 1.
std::size_t thread_budget();

// Splits [begin, end) into contiguous chunks, one per worker. Runs inline
// when the range is small or the budget is 1. fn must be safe to run
// concurrently on disjoint index ranges.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t min_parallel = 4096);

}  // namespace fatpoints
