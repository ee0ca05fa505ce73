#pragma once

#include <exception>

namespace hypfrac {

/// Selects the OpenMP kernel or its serial reference. Both produce
/// bit-identical results: work is partitioned by index, never by completion.
enum class Execution { parallel, serial };

/// Number of OpenMP workers (1 when built without OpenMP).
int worker_count();

/// Runs body(i) for i in [0, n). In parallel mode iterations are handed out
/// dynamically; the first exception thrown is rethrown after the loop, since
/// exceptions may not cross an OpenMP region.
template <class Body>
void for_each_index(long n, Execution exec, Body&& body) {
    if (exec == Execution::serial) {
        for (long i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(hypfrac_for_each_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace hypfrac
