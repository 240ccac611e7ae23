#include "ncdr/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ncdr {

namespace {
std::atomic<unsigned> g_jobs{0};
}

unsigned default_jobs() {
  unsigned j = g_jobs.load();
  if (j != 0) return j;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_default_jobs(unsigned jobs) { g_jobs.store(jobs); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned jobs) {
  if (jobs == 0) jobs = default_jobs();
  if (jobs <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      {
        std::lock_guard lock(failure_mu);
        if (failure) return;
      }
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ncdr
