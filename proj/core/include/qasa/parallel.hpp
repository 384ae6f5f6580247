#pragma once

#include <cstddef>
#include <functional>

namespace qasa {

/// Worker count from the QASA_WORKERS environment variable, falling back to
/// the hardware concurrency (at least 1).
std::size_t default_workers();

/// Calls task(i) for i in [0, count) on up to `workers` threads (0 means
/// default_workers()). The first exception thrown by a task is rethrown
/// after all threads finish.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task);

}  // namespace qasa
