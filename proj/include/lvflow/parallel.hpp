#pragma once

#include <cstddef>
#include <functional>

namespace lvflow {

/// Environment variable capping the number of worker threads.
inline constexpr const char* kThreadsEnvVar = "LVFLOW_NUM_THREADS";

/// Worker count: LVFLOW_NUM_THREADS when set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, count), split into contiguous blocks
/// across worker_count() threads. Each index is visited exactly once, so
/// results written to slot i are independent of scheduling. The first
/// exception thrown by any block is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace lvflow
