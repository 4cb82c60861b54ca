#pragma once

#include <cstddef>
#include <functional>

namespace qtf {

/// Worker count: QTF_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Iterations must write disjoint outputs;
/// the schedule never affects results.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qtf
