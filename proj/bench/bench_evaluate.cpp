// Serial vs OpenMP batch evaluation, and a short serial/parallel engine run.
#include <benchmark/benchmark.h>

#include <cmath>

#include "ude/engine.hpp"
#include "ude/kernels.hpp"
#include "ude/problems.hpp"

namespace {

// con-rastrigin with a busy loop so each evaluation costs a few microseconds.
ude::ProblemSpec heavy_problem(std::size_t d, int work)
{
    ude::ProblemSpec spec = ude::find_problem("con-rastrigin").spec(d);
    auto inner = spec.evaluate;
    spec.evaluate = [inner, work](std::span<const double> x) {
        ude::Evaluation e = inner(x);
        double acc = 0.0;
        for (int k = 0; k < work; ++k)
            acc += std::sin(x[k % x.size()] + k);
        e.f += acc * 0.0;
        return e;
    };
    return spec;
}

std::vector<ude::Vector> batch(const ude::ProblemSpec& spec, std::size_t n)
{
    ude::RngStream rng(1);
    std::vector<ude::Vector> xs(n, ude::Vector(spec.dimension));
    for (auto& x : xs)
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = ude::sample_gene(spec.lower_bounds[j], spec.upper_bounds[j], rng.uniform());
    return xs;
}

void BM_EvaluateSerial(benchmark::State& state)
{
    const auto spec = heavy_problem(10, static_cast<int>(state.range(0)));
    const auto xs = batch(spec, 150);
    for (auto _ : state)
        benchmark::DoNotOptimize(ude::kernels::evaluate_serial(spec, xs));
    state.SetItemsProcessed(state.iterations() * 150);
}

void BM_EvaluateParallel(benchmark::State& state)
{
    const auto spec = heavy_problem(10, static_cast<int>(state.range(0)));
    const auto xs = batch(spec, 150);
    for (auto _ : state)
        benchmark::DoNotOptimize(ude::kernels::evaluate_parallel(spec, xs));
    state.SetItemsProcessed(state.iterations() * 150);
}

void BM_EngineRun(benchmark::State& state)
{
    const auto spec = heavy_problem(10, 200);
    ude::EngineConfig config;
    config.max_fes = 20000;
    config.parallel_evaluation = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(ude::run(spec, config, 1).best.f);
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(0)->Arg(200)->Arg(2000);
BENCHMARK(BM_EvaluateParallel)->Arg(0)->Arg(200)->Arg(2000);
BENCHMARK(BM_EngineRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
