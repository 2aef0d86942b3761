#pragma once

#include <cstdint>
#include <functional>

namespace nclass {

/// Number of worker threads used by data-parallel loops. Defaults to the
/// hardware concurrency, capped by the GAUSS_NCLASS_THREADS environment
/// variable when set to a positive integer.
int worker_count();

/// Runs f(i) for i in [0, n). Work is split into a fixed number of chunks
/// independent of the worker count, so any floating-point output written per
/// index is identical no matter how many threads run.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& f);

}  // namespace nclass
