#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypfrac/errors.hpp"
#include "hypfrac/stats.hpp"

#include <cmath>
#include <random>

using namespace hypfrac;

TEST_CASE("Kolmogorov survival function at tabulated critical values") {
    // Asymptotic critical values: 1.3581 at 5 %, 1.6276 at 1 %.
    CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(kolmogorov_survival(1.6276) == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(kolmogorov_survival(0.0) == 1.0);
    // both series agree where they switch
    CHECK(kolmogorov_survival(1.1799) == doctest::Approx(kolmogorov_survival(1.1801)).epsilon(1e-3));
}

TEST_CASE("one-sample KS") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xs(20000);
    for (auto& x : xs) {
        x = u(gen);
    }
    const auto good = ks_one_sample(xs, [](double x) { return std::clamp(x, 0.0, 1.0); });
    CHECK(good.p_value > 0.01);
    CHECK(good.statistic < 0.02);
    const auto bad = ks_one_sample(xs, [](double x) { return std::clamp(x * x, 0.0, 1.0); });
    CHECK(bad.p_value < 1e-6);
    CHECK(ks_one_sample({0.5}, [](double x) { return x; }).statistic == doctest::Approx(0.5));
}

TEST_CASE("two-sample KS") {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> a(5000);
    std::vector<double> b(7000);
    std::vector<double> c(7000);
    for (auto& x : a) x = n(gen);
    for (auto& x : b) x = n(gen);
    for (auto& x : c) x = n(gen) + 0.2;
    CHECK(ks_two_sample(a, b).p_value > 0.01);
    CHECK(ks_two_sample(a, c).p_value < 1e-6);
    CHECK(ks_two_sample(a, a).statistic == 0.0);
    CHECK(ks_two_sample({1.0, 2.0}, {3.0, 4.0}).statistic == 1.0);
    CHECK_THROWS_AS(ks_two_sample({}, {1.0}), DomainError);
}

TEST_CASE("mean estimate") {
    const auto m = mean_estimate({1.0, 2.0, 3.0, 4.0});
    CHECK(m.mean == doctest::Approx(2.5));
    CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(mean_estimate({1.0, 2.0}, [](double x) { return x * x; }).mean == doctest::Approx(2.5));
}
