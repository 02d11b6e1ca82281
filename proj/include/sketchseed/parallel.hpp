#pragma once

#include <cstddef>
#include <functional>

namespace sketchseed {

// Worker cap for the projection inner loop. Reads SKETCHSEED_THREADS on
// every call (so tests can vary it); unset or invalid means 1. Clamped to
// hardware concurrency.
std::size_t thread_cap();

// Runs body(begin, end) over contiguous blocks of [0, n), one block per
// worker. Callers must write disjoint outputs per index; block boundaries
// depend only on n and the worker count, never on scheduling.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace sketchseed
