#pragma once

#include <cstddef>
#include <functional>

namespace srlab {

// Number of worker threads used by parallel_for. Defaults to the hardware
// concurrency; the CLI overrides it with --threads.
unsigned worker_count();
void set_worker_count(unsigned n);

// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
// write results into per-index slots so output order never depends on
// scheduling. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace srlab
