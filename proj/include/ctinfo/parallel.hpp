#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ctinfo {

/// Execution mode for sweep/campaign kernels. The serial path is the
/// reference implementation; the OpenMP path must produce identical results
/// (work items are independent and indexed, never order-dependent).
enum class ExecMode { serial, openmp };

template <typename Fn>
void parallel_for(std::size_t n, ExecMode mode, Fn&& body) {
#ifdef _OPENMP
    if (mode == ExecMode::openmp) {
        #pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace ctinfo
