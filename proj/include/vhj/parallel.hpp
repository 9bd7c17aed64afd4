#pragma once

#include <cstddef>
#include <functional>

namespace vhj {

// Number of workers used by node-parallel loops. Reads CHJ_THREADS on first
// use (0 or unset = hardware concurrency) unless overridden.
std::size_t worker_count();

// Override the worker count for the current process; 0 restores the
// environment/hardware default.
void set_worker_count(std::size_t n);

// Splits [0, n) into contiguous chunks, one per worker, and calls
// body(begin, end, worker) on each. Chunk boundaries depend only on n and the
// worker count; bodies must write disjoint outputs.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace vhj
