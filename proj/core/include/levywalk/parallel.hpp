#pragma once

#include <cstddef>
#include <functional>

namespace levywalk {

/// Thread count from the LEVYWALK_THREADS environment variable, or the
/// hardware concurrency when unset. Always >= 1.
unsigned default_thread_count();

/// Runs body(chunk_index, begin, end) for every chunk of [0, count) of size
/// `chunk` using `threads` workers pulling chunks from a shared counter.
/// Chunk boundaries depend only on (count, chunk), never on `threads`, so
/// callers that store per-chunk results and merge them in chunk order get
/// bit-identical output for any thread count.
void parallel_for_chunks(std::size_t count, std::size_t chunk, unsigned threads,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

inline std::size_t chunk_count(std::size_t count, std::size_t chunk) {
  return (count + chunk - 1) / chunk;
}

}  // namespace levywalk
