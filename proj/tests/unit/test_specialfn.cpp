#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypfrac/errors.hpp"
#include "hypfrac/specialfn.hpp"

#include <cmath>
#include <numbers>

using namespace hypfrac;

namespace {

// Plain series in long double; only trusted where the terms stay small.
double ml_series_oracle(double beta, double z) {
    long double sum = 0.0L;
    for (int k = 0; k < 400; ++k) {
        const long double term = std::pow(static_cast<long double>(z), k) / std::tgamma(static_cast<long double>(beta * k + 1.0));
        sum += term;
        if (k > 20 && std::fabs(term) < 1e-30L) {
            break;
        }
    }
    return static_cast<double>(sum);
}

// E_beta(-x) ~ sum_{k=1}^{K} (-1)^{k+1} x^{-k} / Gamma(1 - beta k) for large x.
double ml_asymptotic_oracle(double beta, double x, int terms) {
    double sum = 0.0;
    for (int k = 1; k <= terms; ++k) {
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        const double arg = 1.0 - beta * k;
        const double inv_gamma = (arg <= 0.0 && arg == std::floor(arg)) ? 0.0 : 1.0 / std::tgamma(arg);
        sum += sign * std::pow(x, -k) * inv_gamma;
    }
    return sum;
}

double simpson(const auto& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    }
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("Mittag-Leffler examples") {
    CHECK(mittag_leffler(0.7, 0.0) == 1.0);
    CHECK(mittag_leffler(1.0, -1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    // e erfc(1)
    CHECK(mittag_leffler(0.5, -1.0) == doctest::Approx(0.42758357615580700).epsilon(1e-12));
}

TEST_CASE("E_1/2(z) = exp(z^2) erfc(-z) on the negative axis") {
    for (double z : {-0.1, -0.5, -1.0, -2.0, -3.5, -7.0, -12.0, -20.0}) {
        const double oracle = std::exp(z * z) * std::erfc(-z);
        CHECK(mittag_leffler(0.5, z) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("E_1 is the exponential") {
    for (double z = -30.0; z <= 0.0; z += 0.25) {
        CHECK(std::abs(mittag_leffler(1.0, z) - std::exp(z)) <= 1e-12 * std::exp(z));
    }
}

TEST_CASE("power series oracle at moderate arguments") {
    for (double beta : {0.3, 0.5, 0.7, 0.9}) {
        for (double z : {-0.5, -1.5, -2.0}) {
            CHECK(mittag_leffler(beta, z) == doctest::Approx(ml_series_oracle(beta, z)).epsilon(1e-10));
        }
    }
    for (double beta : {0.7, 0.9}) {
        CHECK(mittag_leffler(beta, -3.0) == doctest::Approx(ml_series_oracle(beta, -3.0)).epsilon(1e-10));
    }
}

TEST_CASE("algebraic tail matches the asymptotic expansion") {
    for (double beta : {0.3, 0.6, 0.8}) {
        CHECK(mittag_leffler(beta, -1e4) == doctest::Approx(ml_asymptotic_oracle(beta, 1e4, 5)).epsilon(1e-10));
    }
}

TEST_CASE("series and integral branches agree in the overlap") {
    for (double beta : {0.3, 0.5, 0.7, 0.9}) {
        for (double x : {0.5, 0.75, 1.0}) {
            const double s = detail::mittag_leffler_series(beta, -x);
            const double i = detail::mittag_leffler_integral(beta, x);
            CHECK(std::abs(s - i) <= 1e-8 * std::abs(s));
            const double ds = detail::mittag_leffler_series_derivative(beta, -x);
            const double di = detail::mittag_leffler_integral_derivative(beta, x);
            CHECK(std::abs(ds - di) <= 1e-8 * std::abs(ds));
        }
        for (double x : {0.1, 0.3, 0.5}) {
            const double s = detail::m_wright_series(beta, x);
            const double i = detail::m_wright_integral(beta, x);
            CHECK(std::abs(s - i) <= 1e-8 * std::abs(s));
        }
    }
}

TEST_CASE("complete monotonicity spot check on [-50, 0]") {
    for (double beta : {0.3, 0.5, 0.7, 0.9}) {
        double prev = 1.0;
        for (int i = 0; i <= 60; ++i) {
            const double z = -std::pow(10.0, -3.0 + i * (std::log10(50.0) + 3.0) / 60.0);
            const double e = mittag_leffler(beta, z);
            CHECK(e > 0.0);
            CHECK(e <= 1.0);
            CHECK(e <= prev);
            prev = e;
        }
    }
}

TEST_CASE("derivative against central differences") {
    for (double beta : {0.4, 0.8}) {
        for (double z : {-0.3, -2.0, -15.0}) {
            const double h = 1e-5 * std::max(1.0, std::abs(z));
            const double fd = (mittag_leffler(beta, z + h) - mittag_leffler(beta, z - h)) / (2.0 * h);
            CHECK(mittag_leffler_derivative(beta, z) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("M-Wright closed form at beta = 1/2") {
    for (double x : {0.0, 0.3, 1.0, 2.0, 5.0, 9.0}) {
        const double oracle = std::exp(-x * x / 4.0) / std::sqrt(std::numbers::pi);
        CHECK(m_wright(0.5, x) == doctest::Approx(oracle).epsilon(1e-10));
    }
    CHECK(m_wright(0.5, 1.0) == doctest::Approx(0.43939129).epsilon(1e-8));
    CHECK(m_wright(0.3, 0.0) == doctest::Approx(1.0 / std::tgamma(0.7)).epsilon(1e-14));
}

TEST_CASE("M-Wright is a probability density with mean 1/Gamma(1+beta)") {
    for (double beta : {0.3, 0.6, 0.8}) {
        for (double x = 0.0; x <= 20.0; x += 0.5) {
            CHECK(m_wright(beta, x) >= 0.0);
        }
        const double upper = beta < 0.7 ? 40.0 : 80.0;
        const double mass = simpson([&](double x) { return m_wright(beta, x); }, 0.0, upper, 4000);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
        const double mean = simpson([&](double x) { return x * m_wright(beta, x); }, 0.0, upper, 4000);
        CHECK(mean == doctest::Approx(1.0 / std::tgamma(1.0 + beta)).epsilon(1e-6));
    }
}

TEST_CASE("rgamma handles poles") {
    CHECK(rgamma(0.0) == 0.0);
    CHECK(rgamma(-2.0) == 0.0);
    CHECK(rgamma(0.5) == doctest::Approx(1.0 / std::sqrt(std::numbers::pi)));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(mittag_leffler(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(mittag_leffler(1.5, -1.0), DomainError);
    CHECK_THROWS_AS(mittag_leffler(0.5, std::nan("")), DomainError);
    CHECK_THROWS_AS(m_wright(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(m_wright(0.5, -1.0), DomainError);
}
