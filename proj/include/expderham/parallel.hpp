#pragma once

#include <functional>

namespace expderham {

/// Worker cap: EXPDERHAM_THREADS if set (>= 1), else hardware concurrency.
int worker_limit();

/// Runs body(0..n-1), each index exactly once, on up to worker_limit() threads.
/// The exception of the lowest failing index is rethrown after all workers stop.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace expderham
