#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace binrep {

inline unsigned default_thread_count() noexcept {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs fn(i) for every i in [0, tasks) on up to `threads` workers. Callers
// write results into per-task slots, so output never depends on scheduling.
// If tasks throw, the exception of the lowest-numbered failing task is rethrown.
template <class Fn>
void parallel_for(std::size_t tasks, unsigned threads, Fn&& fn) {
  if (tasks == 0) return;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::size_t>(tasks, 1024))));
  std::vector<std::exception_ptr> errors(tasks);
  if (threads == 1) {
    for (std::size_t i = 0; i < tasks; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Splits [lo, hi] (inclusive) into `parts` contiguous, nearly equal ranges.
struct Span {
  std::uint64_t lo;
  std::uint64_t hi;
};

inline std::vector<Span> split_range(std::uint64_t lo, std::uint64_t hi, std::size_t parts) {
  std::vector<Span> out;
  if (hi < lo) return out;
  std::uint64_t len = hi - lo + 1;
  parts = std::max<std::size_t>(1, std::min<std::uint64_t>(parts, len));
  std::uint64_t base = len / parts;
  std::uint64_t extra = len % parts;
  std::uint64_t start = lo;
  for (std::size_t i = 0; i < parts; ++i) {
    std::uint64_t size = base + (i < extra ? 1 : 0);
    out.push_back({start, start + size - 1});
    start += size;
  }
  return out;
}

}  // namespace binrep
