#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypfrac/errors.hpp"
#include "hypfrac/hypgeo.hpp"
#include "hypfrac/nonlinear.hpp"
#include "hypfrac/specialfn.hpp"

#include <cmath>
#include <sstream>

using namespace hypfrac;

TEST_CASE("positivity boundary") {
    // bisection on C + ln tanh(eta/2) = 0
    double lo = 1e-6;
    double hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (1.0 + std::log(std::tanh(0.5 * mid)) > 0.0 ? hi : lo) = mid;
    }
    CHECK(make_profile(2.0, 1.0).eta_star == doctest::Approx(lo).epsilon(1e-12));
    CHECK(make_profile(2.0, 1.0).eta_star == doctest::Approx(0.7719).epsilon(1e-4));
}

TEST_CASE("profile") {
    const auto p = make_profile(1.0, 1.0);
    CHECK(separable_profile(p, 40.0) == doctest::Approx(1.0).epsilon(1e-12));
    const auto q = make_profile(2.0, 1.0);
    const double h = 1e-4;
    const double d = (profile_power(q, 1.5 + h) - profile_power(q, 1.5 - h)) / (2.0 * h);
    CHECK(d == doctest::Approx(1.0 / std::sinh(1.5)).epsilon(1e-8));
    CHECK(1.0 / std::sinh(1.5) == doctest::Approx(0.46964).epsilon(1e-5));
    double prev = 0.0;
    for (double eta = q.eta_star + 0.05; eta < 8.0; eta += 0.1) {
        const double g = separable_profile(q, eta);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("residual of the separable solution") {
    const auto p = make_profile(2.0, 1.0);
    const auto id = TimeChange::identity();
    const double u = separable_solution(p, 0.6, id, 1.5, 1.0);
    CHECK(std::abs(nonlinear_residual(p, 0.6, id, 1.5, 1.0)) <= 1e-5 * (1.0 + std::abs(u)));
    CHECK(std::abs(nonlinear_residual(p, 0.6, id, 1.5, 1e-3)) <= 1e-5 * (1.0 + std::abs(u)));
    for (double t : {0.2, 1.0, 3.0}) {
        const auto f = TimeChange::log1p();
        const double ratio = separable_solution(p, 0.4, f, 2.0, t) / separable_profile(p, 2.0);
        CHECK(std::abs(ratio - mittag_leffler(0.4, -std::pow(f(t), 0.4))) <= 1e-12);
    }
    for (double eta = p.eta_star + 0.2; eta <= 6.0; eta += 0.25) {
        CHECK(std::abs(radial_laplacian([&](double e) { return profile_power(p, e); }, eta)) <= 1e-8);
    }
}

TEST_CASE("errors and CSV") {
    CHECK_THROWS_AS(make_profile(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_profile(1.0, 0.0), DomainError);
    const auto p = make_profile(1.0, 1.0);
    CHECK_THROWS_AS(separable_profile(p, 0.5), DomainError);
    CHECK_THROWS_AS(nonlinear_residual(p, 1.0, TimeChange::identity(), 2.0, 1.0), DomainError);
    std::ostringstream out;
    write_csv({{1.0, 1.0, 0.5, "identity", 2.0, 1.0, 1e-12}}, out);
    CHECK(out.str().rfind("n,C,beta,f_kind,eta,t,residual\n", 0) == 0);
}
