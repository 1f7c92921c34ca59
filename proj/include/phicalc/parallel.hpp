#pragma once

#include <cstddef>
#include <functional>

namespace phicalc {

// Worker count: PHICALC_THREADS if set and positive, else hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0, n) on up to thread_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace phicalc
