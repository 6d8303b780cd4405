#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace splbee {

// Static-chunked parallel map over [0, n): worker w gets one contiguous
// range and fn(w, begin, end) processes it. Work per index must not depend
// on which worker runs it; chunking then has no observable effect beyond
// timing. The first exception thrown by any worker is rethrown here.
template <typename Fn>
void parallel_chunks(std::int64_t n, int workers, Fn&& fn) {
  if (n <= 0) return;
  workers = std::max<std::int64_t>(1, std::min<std::int64_t>(workers, n));
  if (workers == 1) {
    fn(0, 0, n);
    return;
  }

  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);

  const std::int64_t base = n / workers;
  const std::int64_t extra = n % workers;
  std::int64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t end = begin + base + (w < extra ? 1 : 0);
    threads.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace splbee
