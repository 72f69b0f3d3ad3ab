#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace probgraph {

// Environment variable consulted for the default thread count.
inline constexpr const char* kThreadsEnvVar = "PROBGRAPH_THREADS";

inline int default_threads() {
  if (const char* env = std::getenv(kThreadsEnvVar)) {
    try {
      int t = std::stoi(env);
      if (t > 0) return t;
    } catch (...) {
    }
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// 0 means "use the default".
inline int resolve_threads(int requested) { return requested > 0 ? requested : default_threads(); }

inline int current_thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

}  // namespace probgraph
