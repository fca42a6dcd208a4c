#ifndef OPTIRL_PARALLEL_HPP
#define OPTIRL_PARALLEL_HPP

#include <atomic>
#include <thread>
#include <vector>

namespace optirl {

// Runs fn(i) for i in [0, n) on up to `jobs` workers. Callers write results
// into index i, so the outcome never depends on scheduling.
template <typename Fn>
void parallel_for(int n, int jobs, const Fn& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int j = 0; j < jobs; ++j)
    workers.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& w : workers) w.join();
}

}  // namespace optirl

#endif  // OPTIRL_PARALLEL_HPP
