// Static-partition parallel loop over element indices. Thread count comes from
// HHO_STOKES_THREADS (default 1); partitioning is static so results are
// deterministic regardless of scheduling.

#ifndef HHO_PARALLEL_HPP
#define HHO_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hho {

inline int thread_count() {
  if (const char* env = std::getenv("HHO_STOKES_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

template <typename F>
void parallel_for(int n, F&& body) {
  const int nt = std::min(thread_count(), n > 0 ? n : 1);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  for (int w = 0; w < nt; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(n) * w / nt);
    const int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / nt);
    workers.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : workers) th.join();
}

} // namespace hho

#endif
