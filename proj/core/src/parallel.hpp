#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace sdfem::detail {

// Static block partition of [begin, end) over at most `threads` workers.
// The first exception thrown by any worker is rethrown on the caller.
template <typename F>
void parallel_for(int begin, int end, int threads, F&& body) {
  const int count = end - begin;
  if (count <= 0) return;
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  const int chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = begin + t * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&, t, lo, hi] {
      try {
        for (int i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace sdfem::detail
