#pragma once

#include <cstddef>
#include <functional>

namespace isoforge {

// worker count: ISOFORGE_THREADS if set and positive, else hardware concurrency
unsigned thread_count();

// runs body(i) for i in [0, n); blocks until all finish, rethrows the first error
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace isoforge
