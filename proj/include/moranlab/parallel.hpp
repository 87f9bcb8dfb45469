#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moranlab {

// Execution policy for the hot loops.  Parallel runs use OpenMP with a static
// schedule and write each slot exactly once, so serial and parallel execution
// produce bit-identical results; Auto picks Parallel only when the trip count
// is large enough to plausibly pay for the fork.
enum class Exec { Auto, Serial, Parallel };

inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <typename F>
inline void par_for(std::int64_t n, Exec mode, F&& body,
                    std::int64_t parallel_threshold = 4096) {
    bool parallel = false;
#ifdef _OPENMP
    parallel = (mode == Exec::Parallel) ||
               (mode == Exec::Auto && n >= parallel_threshold &&
                omp_get_max_threads() > 1);
#else
    (void)mode;
    (void)parallel_threshold;
#endif
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            body(i);
        }
#endif
    } else {
        for (std::int64_t i = 0; i < n; ++i) {
            body(i);
        }
    }
}

}  // namespace moranlab
