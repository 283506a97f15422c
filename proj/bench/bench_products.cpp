#include "svx/harness.hpp"
#include "svx/kernels.hpp"
#include "svx/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

struct Operands {
    svx::Matrix a, x, y;
};

Operands make_operands(Eigen::Index n, Eigen::Index k)
{
    svx::Rng rng(svx::derive_seed(99, svx::Stream::Trial));
    return {rng.gaussian_matrix(n, n), rng.gaussian_matrix(n, k), rng.gaussian_matrix(n, k)};
}

void BM_MultiplySerial(benchmark::State& state)
{
    const Operands op = make_operands(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(svx::kernels::multiply_serial(op.a, op.x));
}

void BM_MultiplyParallel(benchmark::State& state)
{
    const Operands op = make_operands(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(svx::kernels::multiply(op.a, op.x));
}

void BM_MultiplyAdjointSerial(benchmark::State& state)
{
    const Operands op = make_operands(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(svx::kernels::multiply_adjoint_serial(op.a, op.y));
}

void BM_MultiplyAdjointParallel(benchmark::State& state)
{
    const Operands op = make_operands(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(svx::kernels::multiply_adjoint(op.a, op.y));
}

void BM_TrialSweep(benchmark::State& state)
{
    svx::ExperimentConfig cfg;
    cfg.m = cfg.n = 200;
    cfg.r = 25;
    cfg.trials = 8;
    const svx::RunOptions options{state.range(0) != 0};
    for (auto _ : state)
        benchmark::DoNotOptimize(svx::run_experiment(cfg, options));
}

} // namespace

BENCHMARK(BM_MultiplySerial)->Args({400, 50})->Args({1000, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyParallel)->Args({400, 50})->Args({1000, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyAdjointSerial)->Args({400, 50})->Args({1000, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyAdjointParallel)->Args({400, 50})->Args({1000, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
