#pragma once

#include <functional>
#include <vector>

namespace hypfrac {

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t n = 0;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

/// One-sample KS against a continuous CDF, p-value with Stephens' small-n
/// correction. `samples` is copied and sorted.
KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS using the effective size n m / (n + m).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Sample mean of h(x) with its standard error.
MeanEstimate mean_estimate(const std::vector<double>& xs, const std::function<double(double)>& h = nullptr);

}  // namespace hypfrac
