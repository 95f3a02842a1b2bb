#pragma once

#include <atomic>
#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cairy {

/// Execution policy for the data-parallel kernels. Every parallel kernel has
/// a serial twin used as the reference in tests and benchmarks; results must
/// be bit-identical because kernels only scatter into preassigned slots
/// (reductions are done serially over the stored arrays afterwards).
enum class Exec { Serial, Parallel };

/// Exceptions thrown by the body are captured and rethrown on the calling
/// thread (the first one wins); OpenMP regions must not leak them.
template <class F>
void parallel_for(std::size_t n, F&& fn, Exec exec = Exec::Parallel) {
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
        std::exception_ptr err = nullptr;
        std::atomic<bool> failed{false};
        // dynamic self-scheduling: per-item cost is uneven (series length,
        // Newton iterations, whole branch continuations); results land in
        // fixed slots so scheduling cannot change the output
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                bool expected = false;
                if (failed.compare_exchange_strong(expected, true))
                    err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

} // namespace cairy
