#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypfrac/parallel.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace hypfrac;

TEST_CASE("for_each_index covers every index once in both modes") {
    omp_set_num_threads(4);
    CHECK(worker_count() >= 1);
    for (auto exec : {Execution::serial, Execution::parallel}) {
        std::vector<int> hits(1000, 0);
        for_each_index(1000, exec, [&](long i) { hits[static_cast<std::size_t>(i)] += 1; });
        for (int h : hits) {
            CHECK(h == 1);
        }
    }
}

TEST_CASE("exceptions cross the parallel region") {
    omp_set_num_threads(4);
    CHECK_THROWS_AS(for_each_index(100, Execution::parallel,
                                   [](long i) {
                                       if (i == 37) {
                                           throw std::runtime_error("boom");
                                       }
                                   }),
                    std::runtime_error);
}
