#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace cyclo {

/// Number of worker threads used by the scan loops. Defaults to the
/// CYCLO_THREADS environment variable, else std::thread::hardware_concurrency.
unsigned thread_count();
void set_thread_count(unsigned threads);

/// Runs body(chunk_index, begin, end) over [begin, end) split into chunks of
/// a fixed size. Chunk boundaries depend only on the range and chunk size,
/// never on the thread count, so callers that store one result per chunk and
/// fold them in chunk order get identical output for any number of threads.
void for_each_chunk(
    std::uint64_t begin, std::uint64_t end, std::uint64_t chunk,
    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& body);

inline std::size_t chunk_count(std::uint64_t begin, std::uint64_t end,
                               std::uint64_t chunk) {
  return end <= begin ? 0 : static_cast<std::size_t>((end - begin + chunk - 1) / chunk);
}

/// Deterministic map-reduce over index chunks.
template <class T, class Map, class Fold>
T chunked_reduce(std::uint64_t begin, std::uint64_t end, std::uint64_t chunk,
                 T init, Map&& map, Fold&& fold) {
  std::vector<T> partial(chunk_count(begin, end, chunk), init);
  for_each_chunk(begin, end, chunk,
                 [&](std::size_t idx, std::uint64_t lo, std::uint64_t hi) {
                   partial[idx] = map(lo, hi);
                 });
  T acc = std::move(init);
  for (auto& p : partial) acc = fold(std::move(acc), std::move(p));
  return acc;
}

}  // namespace cyclo
