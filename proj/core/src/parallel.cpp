#include "pabn/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pabn {

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PABN_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::size_t n, std::size_t chunk_size, int nthreads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t nchunks = (n + chunk_size - 1) / chunk_size;
  if (nthreads <= 1 || nchunks <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      fn(c * chunk_size, std::min(n, (c + 1) * chunk_size));
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= nchunks) return;
        fn(c * chunk_size, std::min(n, (c + 1) * chunk_size));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(nchunks, std::memory_order_relaxed);
    }
  };

  std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(nthreads), nchunks);
  std::vector<std::thread> pool;
  pool.reserve(nw - 1);
  for (std::size_t t = 1; t < nw; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace pabn
