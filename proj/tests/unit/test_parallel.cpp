#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "cyclo/parallel.hpp"

using namespace cyclo;

TEST_CASE("chunked_reduce is independent of the thread count") {
  const unsigned saved = thread_count();
  auto sum_of_squares = [] {
    return chunked_reduce<double>(
        0, 100000, 777, 0.0,
        [](std::uint64_t lo, std::uint64_t hi) {
          double s = 0;
          for (auto i = lo; i < hi; ++i) s += 1.0 / static_cast<double>(i * i + 1);
          return s;
        },
        [](double a, double b) { return a + b; });
  };
  set_thread_count(1);
  const double one = sum_of_squares();
  for (unsigned t : {2u, 3u, 8u}) {
    set_thread_count(t);
    CHECK(sum_of_squares() == one);
  }
  set_thread_count(saved);
}

TEST_CASE("for_each_chunk covers the range once") {
  std::atomic<std::uint64_t> total{0};
  for_each_chunk(5, 1005, 64, [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
    total += hi - lo;
  });
  CHECK(total == 1000);
  CHECK(chunk_count(0, 0, 10) == 0);
  CHECK(chunk_count(0, 11, 10) == 2);
}

TEST_CASE("for_each_chunk rethrows") {
  CHECK_THROWS_AS(for_each_chunk(0, 100, 10,
                                 [](std::size_t idx, std::uint64_t, std::uint64_t) {
                                   if (idx == 3) throw std::runtime_error("boom");
                                 }),
                  std::runtime_error);
}
