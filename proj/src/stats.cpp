#include "hypfrac/stats.hpp"

#include "hypfrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypfrac {

double kolmogorov_survival(double lambda) {
    if (!(lambda > 0.0)) {
        return 1.0;
    }
    if (lambda < 1.18) {
        // Jacobi theta form converges fast for small lambda.
        const double q = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double s = 0.0;
        for (int k = 1; k <= 8; ++k) {
            const double m = 2.0 * k - 1.0;
            s += std::exp(-m * m * q);
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s, 0.0, 1.0);
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 == 1) ? term : -term;
        if (term < 1e-18) {
            break;
        }
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

namespace {

double p_value(double d, double n_eff) {
    const double root = std::sqrt(n_eff);
    return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        detail::domain_fail("ks_one_sample", "no samples");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return {d, p_value(d, n), samples.size()};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        detail::domain_fail("ks_two_sample", "both samples must be non-empty");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return {d, p_value(d, na * nb / (na + nb)), a.size() + b.size()};
}

MeanEstimate mean_estimate(const std::vector<double>& xs, const std::function<double(double)>& h) {
    if (xs.size() < 2) {
        detail::domain_fail("mean_estimate", "need at least two samples");
    }
    // Welford
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (double x : xs) {
        const double v = h ? h(x) : x;
        ++k;
        const double delta = v - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (v - mean);
    }
    const double var = m2 / static_cast<double>(k - 1);
    return {mean, std::sqrt(var / static_cast<double>(k))};
}

}  // namespace hypfrac
