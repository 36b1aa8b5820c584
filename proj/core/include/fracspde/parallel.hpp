#pragma once

#include <cstddef>
#include <functional>

namespace fracspde {

/// Worker count: FRACSPDE_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Runs task(i) for i in [0, n_tasks) on up to worker_count() threads.
/// Tasks must write only to their own slot of caller-owned storage; callers
/// merge those slots in index order, which keeps results independent of
/// scheduling. If tasks throw, the exception of the lowest failing index is
/// rethrown after all workers stop.
void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& task);

}  // namespace fracspde
