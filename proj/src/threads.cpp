#include "fatpoints/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace fatpoints {

std::size_t thread_budget() {
  static const std::size_t budget = [] {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("FATPOINT_THREADS")) {
      try {
        const long v = std::stol(env);
        if (v >= 1 && static_cast<std::size_t>(v) < n) n = static_cast<std::size_t>(v);
      } catch (...) {
        // ignore malformed values, keep hardware default
      }
    }
    return n;
  }();
  return budget;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t min_parallel) {
  const std::size_t n = end > begin ? end - begin : 0;
  const std::size_t workers = thread_budget();
  if (n == 0) return;
  if (workers == 1 || n < min_parallel) {
    fn(begin, end);
    return;
  }
  const std::size_t chunks = workers;
  const std::size_t chunk = (n + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  pool.reserve(chunks - 1);
  std::size_t lo = begin;
  for (std::size_t t = 0; t + 1 < chunks && lo + chunk < end; ++t) {
    pool.emplace_back(fn, lo, lo + chunk);
    lo += chunk;
  }
  fn(lo, end);
  for (auto& th : pool) th.join();
}

}  // namespace fatpoints
