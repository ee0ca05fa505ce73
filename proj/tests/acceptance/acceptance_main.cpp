// One PASS/FAIL line per acceptance criterion; exit status 1 on any failure.
// Optional arguments restrict the run to the given criterion ids.

#include "hypfrac/acceptance.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    hypfrac::AcceptanceOptions opts;
    for (int i = 1; i < argc; ++i) {
        opts.only.push_back(std::atoi(argv[i]));
    }
    const auto results = hypfrac::run_acceptance(opts, std::cout);
    int failed = 0;
    for (const auto& r : results) {
        failed += r.passed ? 0 : 1;
    }
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
