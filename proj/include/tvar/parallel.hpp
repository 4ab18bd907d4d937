#pragma once

#include <cstddef>
#include <functional>

namespace tvar {

/// Worker count used by parallel operations; 0 selects hardware concurrency.
void set_thread_count(int threads);
[[nodiscard]] int thread_count();

/// Runs body(i) for i in [0, count). Iterations must write only to
/// index-owned slots; the first exception (lowest index) is rethrown after all
/// workers join. Nested calls from inside a worker run serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tvar
