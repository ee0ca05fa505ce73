#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypfrac/errors.hpp"
#include "hypfrac/hypgeo.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hypfrac;

namespace {

constexpr double kPi = std::numbers::pi;

double angle_gap(double a, double b) {
    const double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

}  // namespace

TEST_CASE("distance examples") {
    CHECK(distance({0, 1}, {0, std::numbers::e}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(distance({3, 2}, {3, 2}) == 0.0);
    CHECK(distance({0, 1}, {1, 1}) == doctest::Approx(std::acosh(1.5)).epsilon(1e-15));
    CHECK(distance({0, 1}, {1, 1}) == doctest::Approx(0.9624237).epsilon(1e-7));
    CHECK(distance({0.3, 0.2}, {-1.0, 4.0}) == doctest::Approx(distance({-1.0, 4.0}, {0.3, 0.2})));
}

TEST_CASE("polar coordinate examples") {
    const auto c = to_cartesian({0.0, 1.3});
    CHECK(c.x == doctest::Approx(0.0).scale(1.0));
    CHECK(c.y == doctest::Approx(1.0));
    const auto up = to_cartesian({1.0, kPi / 2});
    CHECK(up.x == doctest::Approx(0.0).scale(1.0));
    CHECK(up.y == doctest::Approx(std::numbers::e).epsilon(1e-14));
    const auto down = to_cartesian({1.0, 3 * kPi / 2});
    CHECK(down.y == doctest::Approx(1.0 / std::numbers::e).epsilon(1e-14));

    const auto center = from_cartesian({0.0, 1.0});
    CHECK(center.eta == 0.0);
    CHECK(center.alpha == 0.0);
    const auto top = from_cartesian({0.0, std::numbers::e});
    CHECK(top.eta == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(top.alpha == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("round trip on (0, 5] x [0, 2 pi)") {
    double worst = 0.0;
    for (int i = 1; i <= 50; ++i) {
        for (int j = 0; j < 72; ++j) {
            const HyperbolicPolar hp{0.1 * i, 2 * kPi * j / 72.0};
            const auto back = from_cartesian(to_cartesian(hp));
            worst = std::max({worst, std::abs(back.eta - hp.eta), angle_gap(back.alpha, hp.alpha)});
            CHECK(back.alpha >= 0.0);
            CHECK(back.alpha < 2 * kPi);
        }
    }
    CHECK(worst <= 1e-12);
    const auto back = from_cartesian(to_cartesian({0.7, 2.1}));
    CHECK(back.eta == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(back.alpha == doctest::Approx(2.1).epsilon(1e-12));
}

TEST_CASE("distance to the center agrees with cosh eta = (x^2+y^2+1)/(2y)") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ux(-4.0, 4.0);
    std::uniform_real_distribution<double> uy(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const HyperbolicPoint p{ux(gen), std::exp(uy(gen))};
        const double cosh_eta = (p.x * p.x + p.y * p.y + 1.0) / (2.0 * p.y);
        CHECK(std::cosh(distance(p, {0, 1})) == doctest::Approx(cosh_eta).epsilon(1e-12));
        CHECK(std::abs(distance(p, {0, 1}) - from_cartesian(p).eta) <= 1e-12);
    }
}

TEST_CASE("geodesic examples") {
    const auto a = std::get<SemicircleGeodesic>(geodesic_through({-1, 1}, {1, 1}));
    CHECK(a.center == doctest::Approx(0.0).scale(1.0));
    CHECK(a.radius == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::get<VerticalGeodesic>(geodesic_through({2, 1}, {2, 5})).x0 == 2.0);
    const auto b = std::get<SemicircleGeodesic>(geodesic_through({0, 1}, {1, 2}));
    CHECK(b.center == doctest::Approx(2.0));
    CHECK(b.radius == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("random geodesics contain both points; triangle inequality") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    std::uniform_real_distribution<double> uy(-2.0, 2.0);
    auto pt = [&] { return HyperbolicPoint{ux(gen), std::exp(uy(gen))}; };
    for (int i = 0; i < 100; ++i) {
        const auto p = pt();
        const auto q = pt();
        const auto g = geodesic_through(p, q);
        CHECK(std::abs(geodesic_residual(g, p)) <= 1e-10);
        CHECK(std::abs(geodesic_residual(g, q)) <= 1e-10);
    }
    for (int i = 0; i < 1000; ++i) {
        const auto a = pt();
        const auto b = pt();
        const auto c = pt();
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
    }
}

TEST_CASE("radial Laplacian") {
    CHECK(radial_laplacian([](double) { return 4.2; }, 1.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(radial_laplacian([](double e) { return std::cosh(e); }, 0.8) == doctest::Approx(2.0 * std::cosh(0.8)).epsilon(1e-8));
    CHECK(std::abs(radial_laplacian([](double e) { return std::log(std::tanh(0.5 * e)); }, 1.5)) <= 1e-8);
    for (double eta = 0.2; eta <= 5.0; eta += 0.2) {
        CHECK(radial_laplacian([](double e) { return std::cosh(e); }, eta) / std::cosh(eta) ==
              doctest::Approx(2.0).epsilon(1e-6));
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(validate({0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(distance({0.0, -1.0}, {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(geodesic_through({1.0, 2.0}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(radial_laplacian([](double e) { return e; }, 1e-4), DomainError);
    CHECK_THROWS_AS(to_cartesian({-1.0, 0.0}), DomainError);
}
