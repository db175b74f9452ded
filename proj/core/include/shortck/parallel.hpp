#pragma once

#include <cstddef>
#include <functional>

namespace shortck {

/// Worker count used by parallel_for; 0 means hardware concurrency.
void set_thread_count(std::size_t n);
std::size_t thread_count();

/// Runs body(i) for i in [begin, end) on a static block partition. Each index
/// is visited exactly once, so disjoint writes give results independent of
/// the schedule. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace shortck
