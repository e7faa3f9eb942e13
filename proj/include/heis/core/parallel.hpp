#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace heis {

/// Runs f(task) for task in [0, n_tasks) on up to `workers` threads.
/// Callers write results into per-task slots and reduce in task order, so
/// outputs never depend on the worker count.
template <class F>
void parallel_tasks(size_t n_tasks, int workers, F&& f) {
  size_t threads = std::min<size_t>(std::max(workers, 1), n_tasks);
  if (threads <= 1) {
    for (size_t t = 0; t < n_tasks; ++t) f(t);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      size_t t = next.fetch_add(1);
      if (t >= n_tasks) return;
      try {
        f(t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n_tasks);
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t i = 1; i < threads; ++i) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Pairwise summation; the tree shape depends only on the length.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

}  // namespace heis
