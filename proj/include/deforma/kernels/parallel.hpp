#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace deforma::kernels {

/// Thread cap from DEFORMA_THREADS (unset or invalid: OpenMP default).
inline int thread_count() {
  int fallback = 1;
#ifdef _OPENMP
  fallback = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("DEFORMA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return fallback;
}

namespace serial {

/// Reference kernel: out[i] = fn(i) in index order.
template <class R, class F>
std::vector<R> map(std::size_t n, F&& fn) {
  std::vector<R> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

}  // namespace serial

/// out[i] = fn(i), evaluated in parallel with dynamic scheduling. Results land
/// in index order, so output is identical to serial::map.
template <class R, class F>
std::vector<R> map(std::size_t n, F&& fn, bool parallel = true) {
  if (!parallel || n < 2) return serial::map<R>(n, fn);
  std::vector<R> out(n);
#ifdef _OPENMP
  // Exceptions may not leave the parallel region; the lowest failing index is
  // rethrown so the error matches the serial kernel.
  const long count = static_cast<long>(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
  for (long i = 0; i < count; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
#else
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
#endif
  return out;
}

}  // namespace deforma::kernels
