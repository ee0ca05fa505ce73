#pragma once

#include "hypfrac/hypgeo.hpp"
#include "hypfrac/parallel.hpp"
#include "hypfrac/time_change.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace hypfrac {

/// mt19937_64 seeded from (seed, stream, substream) through seed_seq, so
/// distinct triples give unrelated sequences and equal triples identical ones.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

    double uniform();  // open interval (0, 1)
    double normal();
    double exponential();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

struct PathConfig {
    int n_steps = 4000;  // steps per unit of operational time
    double sigma = 1.4142135623730951;  // sqrt(2): generator y^2 (d_xx + d_yy)
};

/// Totally skewed beta-stable H(t) = t^{1/beta} H(1), E exp(-p H(1)) = exp(-p^beta).
double sample_stable(double beta, double t, RngStream& rng);

/// Inverse stable subordinator at a single time: (t / H(1))^beta.
double sample_inverse_stable(double beta, double t, RngStream& rng);

/// Hyperbolic Brownian motion at time t from `start`. Y takes exact log-normal
/// steps; X given the Y path is Gaussian with variance sigma^2 dt sum Y_k^2,
/// which is the Euler update with Y frozen on each step, drawn in one go.
HyperbolicPoint sample_hyperbolic_bm(double t, const PathConfig& cfg, const HyperbolicPoint& start, RngStream& rng);

/// B(L(f(t))): the clock uses `clock`, the path `path` (independent streams).
HyperbolicPoint sample_time_changed(double beta, const TimeChange& f, double t, const PathConfig& cfg,
                                    RngStream& clock, RngStream& path);

struct TelegraphTimeConfig {
    double grid_step = 1e-3;
    double horizon = 50.0;  // extended twice by a factor 10 before giving up
};

/// First grid point s where H1^{2 beta}(s) + (2 lambda)^{1/beta} H2^{beta}(s) >= t.
/// Overshoots the true crossing by at most one grid step.
double sample_telegraph_time(double beta, double lambda, double t, const TelegraphTimeConfig& tc, RngStream& rng);

HyperbolicPoint sample_telegraph_process(double beta, double lambda, const TimeChange& f, double t,
                                         const PathConfig& cfg, const TelegraphTimeConfig& tc, RngStream& clock,
                                         RngStream& path);

enum class ProcessKind { stable, inverse_stable, hyperbolic_bm, time_changed, telegraph_time, telegraph };

std::string to_string(ProcessKind kind);
ProcessKind parse_process(const std::string& name);

struct SampleRequest {
    ProcessKind kind = ProcessKind::time_changed;
    double beta = 0.5;
    double lambda = 0.0;
    TimeChange f = TimeChange::identity();
    double t = 1.0;
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    PathConfig path;
    TelegraphTimeConfig telegraph;
};

/// Values are hyperbolic radii (distance to (0,1)) for path processes and
/// times otherwise.
struct SampleBatch {
    SampleRequest request;
    std::vector<double> values;
};

/// Samples are produced in fixed shards of kShardSize; shard k draws from
/// RngStream(seed, 2 stream, k) for clocks and RngStream(seed, 2 stream + 1, k)
/// for paths, so the parallel and serial runs agree bit for bit.
inline constexpr std::size_t kShardSize = 2048;

SampleBatch sample_batch(const SampleRequest& req, Execution exec = Execution::parallel);

/// CSV `value,process,beta,lambda,f_kind,t,seed,stream`; stream is the
/// requested stream id and the shard of row i is i / kShardSize.
void write_csv(const SampleBatch& batch, std::ostream& out);

}  // namespace hypfrac
