#pragma once

#include <cstddef>
#include <functional>

namespace icefem {

// Worker cap: min(hardware_concurrency, ICEFEM_THREADS) when the environment
// variable is set to a positive integer, at least 1.
int thread_count();

// Chunked parallel loop over [0, n). fn must be safe to call concurrently for
// distinct indices; the result is deterministic because every index writes
// only its own slots. Runs inline when n is small or only one worker is
// available.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace icefem
