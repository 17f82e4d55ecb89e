#pragma once

#include <cstddef>
#include <functional>

namespace haptibench {

/// Runs `fn(i)` for i in [0, n) on up to `jobs` threads (0 = hardware
/// concurrency). If any call throws, the exception of the lowest failing
/// index is rethrown after all threads finish.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace haptibench
