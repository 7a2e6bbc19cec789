#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace prym {

/// Thread cap from PRYM_THREADS; 0 or unset means hardware concurrency.
inline unsigned thread_count_from_env() {
  const char* raw = std::getenv("PRYM_THREADS");
  unsigned requested = 0;
  if (raw != nullptr && *raw != '\0') {
    std::size_t used = 0;
    long value = -1;
    try {
      value = std::stol(raw, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(raw).size() || value < 0)
      throw std::invalid_argument("PRYM_THREADS must be a nonnegative integer");
    requested = static_cast<unsigned>(value);
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

/// Evaluates fn(0..count-1) on up to `threads` workers and returns the
/// results in index order. Exceptions propagate to the caller.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<T> results(count);
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) results[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace prym
