#pragma once

#include <cstddef>
#include <functional>

namespace onsager {

/// Number of worker threads used by sweeps. Defaults to 1.
int thread_count();
void set_thread_count(int threads);

/// Calls body(i) for i in [0, count). Each index is handled exactly once;
/// callers write results into preallocated slots, so output never depends
/// on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace onsager
