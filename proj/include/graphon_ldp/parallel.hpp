#pragma once

#include <cstddef>
#include <functional>

namespace gldp {

// Worker cap: GRAPHON_LDP_THREADS when set to a positive integer, else the
// hardware concurrency (at least 1). `requested` > 0 overrides both.
int worker_count(int requested = 0);

// Runs body(i) for i in [0, n) on up to `workers` threads. Work is assigned
// by index, so results written per index do not depend on scheduling.
// The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace gldp
