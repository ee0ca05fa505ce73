// Parallel kernels against their serial references.

#include "hypfrac/solution.hpp"
#include "hypfrac/stochastic.hpp"

#include <benchmark/benchmark.h>

using namespace hypfrac;

namespace {

Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SpectralKernelBuild(benchmark::State& state) {
    for (auto _ : state) {
        auto k = diffusion_kernel(0.5, TimeChange::identity(), 1.0, {}, mode(state));
        benchmark::DoNotOptimize(k.sine_transform(1.0));
    }
}

void BM_FieldEvaluation(benchmark::State& state) {
    const auto k = diffusion_kernel(0.5, TimeChange::identity(), 1.0);
    const auto grid = parse_grid("0.05:6:240");
    for (auto _ : state) {
        auto field = evaluate_field([&](double e) { return k(e); }, grid, mode(state));
        benchmark::DoNotOptimize(field.mass);
    }
}

void BM_TimeChangedSamples(benchmark::State& state) {
    SampleRequest req;
    req.kind = ProcessKind::time_changed;
    req.n = 8192;
    req.path.n_steps = 1000;
    for (auto _ : state) {
        auto batch = sample_batch(req, mode(state));
        benchmark::DoNotOptimize(batch.values.data());
    }
}

void BM_StableSamples(benchmark::State& state) {
    SampleRequest req;
    req.kind = ProcessKind::stable;
    req.n = 1 << 18;
    for (auto _ : state) {
        auto batch = sample_batch(req, mode(state));
        benchmark::DoNotOptimize(batch.values.data());
    }
}

}  // namespace

// Arg 0: serial reference, 1: OpenMP.
BENCHMARK(BM_SpectralKernelBuild)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldEvaluation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TimeChangedSamples)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StableSamples)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
