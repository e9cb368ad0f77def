#pragma once

#include <cstddef>
#include <functional>

namespace scopekit {

// Worker cap for internal parallelism.  Reads SCOPE_KIT_THREADS once; values
// < 1 or unset fall back to the hardware concurrency.
int thread_budget();

// Runs fn(i) for i in [0, n).  Work items must be independent; results must
// not depend on scheduling (all call sites write to disjoint slots).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace scopekit
