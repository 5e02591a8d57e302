#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace parosc {

// Worker count for the data-parallel kernels; PAROSC_THREADS caps it.
inline int max_threads() {
  static const int n = [] {
#ifdef _OPENMP
    int v = omp_get_max_threads();
#else
    int v = 1;
#endif
    if (const char* env = std::getenv("PAROSC_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0 && cap < v) v = cap;
    }
    return v;
  }();
  return n;
}

// Deterministic data-parallel map: every index is computed independently,
// so the result is identical to the serial reference.
template <typename F>
void parallel_for(long n, const F& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(parosc::max_threads())
#endif
  for (long i = 0; i < n; ++i) f(i);
}

// Serial reference implementation kept for testing and benchmarking.
template <typename F>
void serial_for(long n, const F& f) {
  for (long i = 0; i < n; ++i) f(i);
}

}  // namespace parosc
