#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypfrac/errors.hpp"
#include "hypfrac/solution.hpp"
#include "hypfrac/stats.hpp"
#include "hypfrac/stochastic.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace hypfrac;

namespace {

SampleRequest request(ProcessKind kind, double beta, std::size_t n, std::uint64_t seed) {
    SampleRequest r;
    r.kind = kind;
    r.beta = beta;
    r.n = n;
    r.seed = seed;
    return r;
}

}  // namespace

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(1, 0);
    RngStream b(1, 0);
    RngStream c(1, 1);
    RngStream d(2, 0);
    bool differs_c = false;
    bool differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.normal();
        CHECK(x == b.normal());
        differs_c = differs_c || x != c.normal();
        differs_d = differs_d || x != d.normal();
        const double u = a.uniform();
        b.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("batches: deterministic, parallel equals serial") {
    omp_set_num_threads(4);
    auto r = request(ProcessKind::time_changed, 0.6, 5000, 17);
    r.path.n_steps = 200;
    const auto p = sample_batch(r, Execution::parallel);
    const auto s = sample_batch(r, Execution::serial);
    const auto again = sample_batch(r, Execution::parallel);
    CHECK(p.values == s.values);
    CHECK(p.values == again.values);
    for (double v : p.values) {
        CHECK(v >= 0.0);
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("stable sampler: Laplace transform and the Levy(1/2) law") {
    const auto batch = sample_batch(request(ProcessKind::stable, 0.5, 200000, 21));
    for (double p : {0.5, 1.0, 2.0}) {
        const auto m = mean_estimate(batch.values, [p](double h) { return std::exp(-p * h); });
        CHECK(std::abs(m.mean - std::exp(-std::sqrt(p))) <= 3.0 * m.std_error);
    }
    // exp(-sqrt(p)) is the transform of 1/(2 Z^2): P(H <= h) = erfc(1/(2 sqrt(h)))
    const auto ks = ks_one_sample(batch.values, [](double h) { return std::erfc(0.5 / std::sqrt(h)); });
    CHECK(ks.p_value > 0.01);
}

TEST_CASE("stable self-similarity") {
    auto one = request(ProcessKind::stable, 0.7, 50000, 31);
    auto two = one;
    two.t = 2.0;
    two.seed = 32;
    auto scaled = sample_batch(one).values;
    for (auto& v : scaled) {
        v *= std::pow(2.0, 1.0 / 0.7);
    }
    CHECK(ks_two_sample(scaled, sample_batch(two).values).p_value > 0.01);
}

TEST_CASE("inverse stable: M-Wright law and mean") {
    const auto batch = sample_batch(request(ProcessKind::inverse_stable, 0.5, 100000, 41));
    // density exp(-s^2/4)/sqrt(pi) integrates to erf(s/2)
    CHECK(ks_one_sample(batch.values, [](double s) { return std::erf(s / 2.0); }).p_value > 0.01);
    const auto m = mean_estimate(batch.values);
    CHECK(std::abs(m.mean - 2.0 / std::sqrt(std::numbers::pi)) <= 3.0 * m.std_error);

    const auto near_one = sample_batch(request(ProcessKind::inverse_stable, 0.99, 20000, 42));
    const auto spread = mean_estimate(near_one.values, [](double s) { return (s - 1.0) * (s - 1.0); });
    // E (S - 1)^2 = 2/Gamma(1 + 2b) - 2/Gamma(1 + b) + 1
    const double exact = 2.0 / std::tgamma(2.98) - 2.0 / std::tgamma(1.99) + 1.0;
    CHECK(std::abs(spread.mean - exact) <= 3.0 * spread.std_error);
    CHECK(exact < 0.011);
}

TEST_CASE("hyperbolic BM") {
    RngStream rng(5, 0);
    const HyperbolicPoint start{0.3, 2.0};
    const auto same = sample_hyperbolic_bm(0.0, {}, start, rng);
    CHECK(same.x == start.x);
    CHECK(same.y == start.y);

    // E cosh(eta) = e^{2t}; allowance for the left-point bias.
    auto r = request(ProcessKind::hyperbolic_bm, 0.5, 40000, 51);
    r.t = 0.25;
    r.path.n_steps = 2000;
    const auto m = mean_estimate(sample_batch(r).values, [](double e) { return std::cosh(e); });
    const double exact = std::exp(0.5);
    CHECK(std::abs(m.mean - exact) <= 3.0 * m.std_error + (exact - 1.0) / 2000.0);
}

TEST_CASE("hyperbolic BM radius follows the classical kernel") {
    auto r = request(ProcessKind::hyperbolic_bm, 0.5, 30000, 61);
    r.path.n_steps = 2000;
    const auto field = evaluate_field([](double e) { return classical_kernel(1.0, e); }, radial_grid(30.0));
    const auto ks = ks_one_sample(sample_batch(r).values,
                                  [&](double e) { return radial_cdf(field, std::min(e, field.eta.back())); });
    CHECK(ks.p_value > 0.01);
}

TEST_CASE("time change enters only through f(t)") {
    auto a = request(ProcessKind::time_changed, 0.6, 20000, 71);
    a.f = TimeChange::power(2.0);
    a.t = 1.5;
    a.path.n_steps = 1000;
    auto b = a;
    b.f = TimeChange::identity();
    b.t = 2.25;
    b.seed = 72;
    CHECK(ks_two_sample(sample_batch(a).values, sample_batch(b).values).p_value > 0.01);
}

TEST_CASE("stream roles are interchangeable") {
    auto a = request(ProcessKind::time_changed, 0.5, 20000, 81);
    a.path.n_steps = 1000;
    auto b = a;
    b.stream = 7;
    CHECK(ks_two_sample(sample_batch(a).values, sample_batch(b).values).p_value > 0.01);
}

TEST_CASE("telegraph clock") {
    TelegraphTimeConfig tc;
    tc.grid_step = 2e-3;
    // Common randomness: the same stream gives the same subordinator path.
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RngStream r1(seed, 0);
        RngStream r2(seed, 0);
        CHECK(sample_telegraph_time(0.3, 0.5, 0.5, tc, r1) <= sample_telegraph_time(0.3, 0.5, 1.5, tc, r2));
    }
    RngStream r0(1, 0);
    CHECK(sample_telegraph_time(0.3, 0.5, 0.0, tc, r0) == 0.0);

    auto small = request(ProcessKind::telegraph_time, 0.25, 20000, 91);
    small.lambda = 1e-8;
    small.telegraph = tc;
    auto inverse = request(ProcessKind::inverse_stable, 0.5, 20000, 92);
    CHECK(ks_two_sample(sample_batch(small).values, sample_batch(inverse).values).p_value > 0.01);

    // Halving the grid moves the mean by no more than O(h) plus noise.
    auto coarse = request(ProcessKind::telegraph_time, 0.25, 20000, 93);
    coarse.lambda = 0.5;
    coarse.telegraph.grid_step = 4e-3;
    auto fine = coarse;
    fine.telegraph.grid_step = 2e-3;
    const auto mc = mean_estimate(sample_batch(coarse).values);
    const auto mf = mean_estimate(sample_batch(fine).values);
    CHECK(std::abs(mc.mean - mf.mean) <= 4e-3 + 3.0 * std::hypot(mc.std_error, mf.std_error));

    TelegraphTimeConfig tiny;
    tiny.grid_step = 1e-3;
    tiny.horizon = 2e-3;
    RngStream r3(3, 0);
    CHECK_THROWS_AS(sample_telegraph_time(0.25, 0.5, 1e6, tiny, r3), NumericalError);
}

TEST_CASE("telegraph process at t = 0 stays at the center") {
    RngStream clock(1, 0);
    RngStream path(1, 1);
    const auto p = sample_telegraph_process(0.25, 0.5, TimeChange::identity(), 0.0, {}, {}, clock, path);
    CHECK(p.x == 0.0);
    CHECK(p.y == 1.0);
}

TEST_CASE("errors and CSV") {
    RngStream rng(1, 0);
    CHECK_THROWS_AS(sample_stable(1.0, 1.0, rng), DomainError);
    CHECK_THROWS_AS(sample_stable(0.5, 0.0, rng), DomainError);
    CHECK_THROWS_AS(sample_inverse_stable(0.0, 1.0, rng), DomainError);
    CHECK_THROWS_AS(sample_telegraph_time(0.5, 1.0, 1.0, {}, rng), DomainError);
    CHECK_THROWS_AS(parse_process("brownian"), DomainError);
    CHECK(parse_process("telegraph-time") == ProcessKind::telegraph_time);

    const auto batch = sample_batch(request(ProcessKind::stable, 0.5, 3, 1));
    std::ostringstream out;
    write_csv(batch, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "value,process,beta,lambda,f_kind,t,seed,stream");
    std::getline(in, line);
    CHECK(std::stod(line.substr(0, line.find(','))) == batch.values[0]);
}
