#include "cyclo/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace cyclo {
namespace {

std::atomic<unsigned> g_threads{0};

unsigned default_threads() {
  if (const char* env = std::getenv("CYCLO_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

unsigned thread_count() {
  unsigned t = g_threads.load(std::memory_order_relaxed);
  if (t == 0) {
    t = default_threads();
    g_threads.store(t, std::memory_order_relaxed);
  }
  return t;
}

void set_thread_count(unsigned threads) {
  g_threads.store(threads == 0 ? default_threads() : threads,
                  std::memory_order_relaxed);
}

void for_each_chunk(
    std::uint64_t begin, std::uint64_t end, std::uint64_t chunk,
    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& body) {
  if (chunk == 0) chunk = 1;
  const std::size_t chunks = chunk_count(begin, end, chunk);
  if (chunks == 0) return;

  auto run = [&](std::size_t idx) {
    const std::uint64_t lo = begin + idx * chunk;
    const std::uint64_t hi = (end - lo) < chunk ? end : lo + chunk;
    body(idx, lo, hi);
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), chunks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < chunks; ++i) run(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
      if (idx >= chunks) return;
      try {
        run(idx);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(chunks, std::memory_order_relaxed);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace cyclo
