#include "hypfrac/stochastic.hpp"

#include "hypfrac/errors.hpp"
#include "hypfrac/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace hypfrac {
namespace {

std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); }
std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(substream), hi(substream), 0x68797066u};
    return std::mt19937_64(seq);
}

void check_stable_order(const char* where, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        detail::domain_fail(where, "stable order must lie in (0, 1)");
    }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream)
    : seed_(seed), stream_(stream), engine_(seeded_engine(seed, stream, substream)) {}

double RngStream::uniform() {
    // 53 random bits shifted by half an ulp: never 0 or 1.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::exponential() { return -std::log(uniform()); }

double sample_stable(double beta, double t, RngStream& rng) {
    check_stable_order("sample_stable", beta);
    if (!(t > 0.0)) {
        detail::domain_fail("sample_stable", "time must be positive");
    }
    const double u = std::numbers::pi * rng.uniform();
    const double e = rng.exponential();
    const double log_h1 = (1.0 - beta) / beta * (detail::kanter_log_a(beta, u) - std::log(e));
    return std::exp(log_h1 + std::log(t) / beta);
}

double sample_inverse_stable(double beta, double t, RngStream& rng) {
    check_stable_order("sample_inverse_stable", beta);
    if (!(t >= 0.0)) {
        detail::domain_fail("sample_inverse_stable", "time must be nonnegative");
    }
    if (t == 0.0) {
        return 0.0;
    }
    const double h1 = sample_stable(beta, 1.0, rng);
    return std::pow(t / h1, beta);
}

HyperbolicPoint sample_hyperbolic_bm(double t, const PathConfig& cfg, const HyperbolicPoint& start, RngStream& rng) {
    validate(start);
    if (!(t >= 0.0) || !std::isfinite(t)) {
        detail::domain_fail("sample_hyperbolic_bm", "time must be finite and nonnegative");
    }
    if (cfg.n_steps < 1 || !(cfg.sigma > 0.0)) {
        detail::domain_fail("sample_hyperbolic_bm", "need n_steps >= 1 and sigma > 0");
    }
    if (t == 0.0) {
        return start;
    }
    const auto steps = static_cast<long>(std::max(1.0, std::ceil(cfg.n_steps * t)));
    const double dt = t / static_cast<double>(steps);
    const double s_dt = cfg.sigma * std::sqrt(dt);
    const double drift = -0.5 * cfg.sigma * cfg.sigma * dt;
    double log_y = std::log(start.y);
    double sum_y2 = 0.0;
    for (long k = 0; k < steps; ++k) {
        sum_y2 += std::exp(2.0 * log_y);
        log_y += s_dt * rng.normal() + drift;
    }
    const double x = start.x + cfg.sigma * std::sqrt(dt * sum_y2) * rng.normal();
    return {x, std::exp(log_y)};
}

HyperbolicPoint sample_time_changed(double beta, const TimeChange& f, double t, const PathConfig& cfg,
                                    RngStream& clock, RngStream& path) {
    if (!(t > 0.0)) {
        detail::domain_fail("sample_time_changed", "time must be positive");
    }
    const double s = sample_inverse_stable(beta, f(t), clock);
    return sample_hyperbolic_bm(s, cfg, HyperbolicPoint{0.0, 1.0}, path);
}

double sample_telegraph_time(double beta, double lambda, double t, const TelegraphTimeConfig& tc, RngStream& rng) {
    if (!(beta > 0.0 && beta < 0.5) || !(lambda > 0.0)) {
        detail::domain_fail("sample_telegraph_time", "need beta in (0, 1/2) and lambda > 0");
    }
    if (!(tc.grid_step > 0.0) || !(tc.horizon > tc.grid_step)) {
        detail::domain_fail("sample_telegraph_time", "need 0 < grid_step < horizon");
    }
    if (!(t >= 0.0)) {
        detail::domain_fail("sample_telegraph_time", "time must be nonnegative");
    }
    if (t == 0.0) {
        return 0.0;
    }
    const double h = tc.grid_step;
    // Increments over one grid step by self-similarity.
    const double scale1 = std::pow(h, 1.0 / (2.0 * beta));
    const double scale2 = std::pow(2.0 * lambda, 1.0 / beta) * std::pow(h, 1.0 / beta);
    double level = 0.0;
    long k = 0;
    double horizon = tc.horizon;
    for (int extension = 0; extension <= 2; ++extension) {
        const auto limit = static_cast<long>(std::ceil(horizon / h));
        while (k < limit) {
            level += scale1 * sample_stable(2.0 * beta, 1.0, rng) + scale2 * sample_stable(beta, 1.0, rng);
            ++k;
            if (level >= t) {
                return static_cast<double>(k) * h;
            }
        }
        horizon *= 10.0;
    }
    detail::numerical_fail("sample_telegraph_time",
                           "level " + std::to_string(t) + " not crossed by s = " + std::to_string(k * h));
}

HyperbolicPoint sample_telegraph_process(double beta, double lambda, const TimeChange& f, double t,
                                         const PathConfig& cfg, const TelegraphTimeConfig& tc, RngStream& clock,
                                         RngStream& path) {
    if (!(t >= 0.0)) {
        detail::domain_fail("sample_telegraph_process", "time must be nonnegative");
    }
    if (t == 0.0) {
        return {0.0, 1.0};
    }
    const double s = sample_telegraph_time(beta, lambda, f(t), tc, clock);
    return sample_hyperbolic_bm(s, cfg, HyperbolicPoint{0.0, 1.0}, path);
}

std::string to_string(ProcessKind kind) {
    switch (kind) {
        case ProcessKind::stable: return "stable";
        case ProcessKind::inverse_stable: return "inverse-stable";
        case ProcessKind::hyperbolic_bm: return "hyperbolic-bm";
        case ProcessKind::time_changed: return "time-changed";
        case ProcessKind::telegraph_time: return "telegraph-time";
        case ProcessKind::telegraph: return "telegraph";
    }
    return "unknown";
}

ProcessKind parse_process(const std::string& name) {
    for (auto k : {ProcessKind::stable, ProcessKind::inverse_stable, ProcessKind::hyperbolic_bm,
                   ProcessKind::time_changed, ProcessKind::telegraph_time, ProcessKind::telegraph}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    detail::domain_fail("parse_process", "unknown process '" + name + "'");
}

namespace {

double draw_one(const SampleRequest& r, RngStream& clock, RngStream& path) {
    const HyperbolicPoint origin{0.0, 1.0};
    switch (r.kind) {
        case ProcessKind::stable: return sample_stable(r.beta, r.f(r.t), clock);
        case ProcessKind::inverse_stable: return sample_inverse_stable(r.beta, r.f(r.t), clock);
        case ProcessKind::hyperbolic_bm: return distance(origin, sample_hyperbolic_bm(r.f(r.t), r.path, origin, path));
        case ProcessKind::time_changed:
            return distance(origin, sample_time_changed(r.beta, r.f, r.t, r.path, clock, path));
        case ProcessKind::telegraph_time: return sample_telegraph_time(r.beta, r.lambda, r.f(r.t), r.telegraph, clock);
        case ProcessKind::telegraph:
            return distance(origin, sample_telegraph_process(r.beta, r.lambda, r.f, r.t, r.path, r.telegraph, clock, path));
    }
    return 0.0;
}

void fill_shard(const SampleRequest& r, std::size_t shard, std::vector<double>& out) {
    RngStream clock(r.seed, 2 * r.stream, shard);
    RngStream path(r.seed, 2 * r.stream + 1, shard);
    const std::size_t begin = shard * kShardSize;
    const std::size_t end = std::min(out.size(), begin + kShardSize);
    for (std::size_t i = begin; i < end; ++i) {
        out[i] = draw_one(r, clock, path);
    }
}

}  // namespace

SampleBatch sample_batch(const SampleRequest& req, Execution exec) {
    if (req.n == 0) {
        detail::domain_fail("sample_batch", "n must be positive");
    }
    if (!(req.t > 0.0)) {
        detail::domain_fail("sample_batch", "time must be positive");
    }
    SampleBatch batch{req, std::vector<double>(req.n, 0.0)};
    const auto shards = static_cast<long>((req.n + kShardSize - 1) / kShardSize);
    for_each_index(shards, exec, [&](long s) { fill_shard(req, static_cast<std::size_t>(s), batch.values); });
    return batch;
}

void write_csv(const SampleBatch& batch, std::ostream& out) {
    const auto& r = batch.request;
    out << "value,process,beta,lambda,f_kind,t,seed,stream\n";
    out << std::setprecision(17);
    const std::string kind = to_string(r.kind);
    const std::string f_kind = r.f.name();
    for (double v : batch.values) {
        out << v << ',' << kind << ',' << r.beta << ',' << r.lambda << ',' << f_kind << ',' << r.t << ',' << r.seed
            << ',' << r.stream << '\n';
    }
}

}  // namespace hypfrac
