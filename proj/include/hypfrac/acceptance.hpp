#pragma once

#include "hypfrac/parallel.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hypfrac {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string summary;  // measured figures against their thresholds
};

struct AcceptanceOptions {
    std::vector<int> only;  // empty: all criteria
    Execution exec = Execution::parallel;
};

inline constexpr int kCriterionCount = 11;

/// Runs the criteria in order, printing one PASS/FAIL line per criterion to
/// `out` as it completes. Exceeding the runtime budget counts as a failure;
/// so does any exception, which is reported in the summary.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace hypfrac
