#pragma once

#include <cstddef>
#include <functional>

namespace ncdr {

/// Worker count used when a caller does not pass one explicitly.
/// Defaults to the hardware concurrency (at least 1).
unsigned default_jobs();
void set_default_jobs(unsigned jobs);

/// Runs body(0..count-1) on up to `jobs` threads.  The first exception
/// thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned jobs = 0);

}  // namespace ncdr
