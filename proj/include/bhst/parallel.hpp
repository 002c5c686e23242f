// Minimal static-chunk parallel loop used by the counters and the gamma sweep.
#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bhst {

// 0 means "use BHST_THREADS or hardware concurrency".
unsigned resolve_thread_count(unsigned requested);

// Runs body(chunk_index, begin, end) over [0, total) split into `chunks`
// contiguous pieces; chunk results are combined by the caller in index order,
// so totals do not depend on the number of threads.
template <class Body>
void parallel_chunks(std::size_t total, std::size_t chunks, unsigned threads, Body body) {
  if (chunks == 0) return;
  const unsigned workers = threads == 0 ? 1 : threads;
  auto range = [&](std::size_t c) {
    return std::pair<std::size_t, std::size_t>{total * c / chunks, total * (c + 1) / chunks};
  };
  if (workers <= 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      auto [b, e] = range(c);
      body(c, b, e);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers) {
          auto [b, e] = range(c);
          body(c, b, e);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace bhst
