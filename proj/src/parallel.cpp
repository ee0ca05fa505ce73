#include "hypfrac/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hypfrac {

int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace hypfrac
