// SPDX-License-Identifier: Apache-2.0
//
// Minimal bounded worker pool: run fn(0..n-1) on up to `width` threads,
// results ordered by index regardless of completion order. The first
// exception wins and is rethrown on the caller thread after join.

#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace virtfusion {

template <typename T>
std::vector<T> parallel_map(std::size_t n, std::size_t width,
                            const std::function<T(std::size_t)>& fn) {
  if (width == 0) width = 1;
  std::vector<T> results(n);
  if (n == 0) return results;

  if (width == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  const std::size_t count = std::min(width, n);
  threads.reserve(count);
  for (std::size_t t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace virtfusion
