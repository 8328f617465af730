#pragma once

#include <cstddef>
#include <functional>

namespace pappus {

// Worker count from PAPPUS_THREADS (unset or 0 = hardware concurrency).
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is an independent work item, so
// callers that write results into slot i get schedule-independent output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pappus
