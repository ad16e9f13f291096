#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace soil {

namespace detail {
inline std::atomic<int>& thread_override() {
  static std::atomic<int> value{-1};  // -1 = follow SOIL_THREADS / hardware
  return value;
}
inline thread_local bool inside_parallel_region = false;
}  // namespace detail

/// Worker cap: programmatic override first, then the SOIL_THREADS environment
/// variable (0 or unset = hardware concurrency).
inline int max_threads() {
  const int forced = detail::thread_override().load();
  if (forced > 0) return forced;
  if (const char* env = std::getenv("SOIL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// 0 restores SOIL_THREADS/auto behaviour.
inline void set_max_threads(int n) { detail::thread_override().store(n > 0 ? n : -1); }

/// Runs body(0..count-1) on up to max_threads() workers. Each index is
/// executed exactly once; callers own determinism by writing to disjoint
/// per-index slots. Nested calls run inline on the calling worker.
inline void parallel_for(int count, const std::function<void(int)>& body) {
  if (count <= 0) return;
  const int workers = detail::inside_parallel_region ? 1 : std::min(max_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> cursor{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&] {
    detail::inside_parallel_region = true;
    while (true) {
      const int i = cursor.fetch_add(1);
      if (i >= count || failed.load()) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        break;
      }
    }
    detail::inside_parallel_region = false;
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace soil
