#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "privopt/evolution.hpp"
#include "privopt/exact.hpp"
#include "privopt/instances.hpp"
#include "privopt/operators.hpp"
#include "privopt/selection.hpp"

using namespace privopt;

static void BM_Hungarian(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto inst = generate_ap_instance(1, n, n, 1, 0, 1000);
    for (auto _ : state) benchmark::DoNotOptimize(solve_ap_exact(inst.objectives[0]).value);
}
BENCHMARK(BM_Hungarian)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);

static void BM_NonDominatedSort(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> dist(0, 1000);
    std::vector<ObjectiveVector> points(n);
    for (auto& p : points) p = {double(dist(rng)), double(dist(rng))};
    for (auto _ : state) benchmark::DoNotOptimize(non_dominated_sort(points));
}
BENCHMARK(BM_NonDominatedSort)->Arg(300)->Unit(benchmark::kMicrosecond);

static void BM_EvaluatePopulation(benchmark::State& state)
{
    const auto inst = generate_ap_instance(2, 100, 100, 1, 0, 1000);
    Rng rng(4);
    Population batch(300);
    for (auto& ind : batch) ind.genome = random_permutation(100, rng);
    const auto plan = ObfuscationPlan::uniform(1, ObfuscationMethod::top(15));
    for (auto _ : state) {
        evaluate_batch(inst, plan, batch);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_EvaluatePopulation)->Unit(benchmark::kMicrosecond);

static void BM_Crossover(benchmark::State& state)
{
    const auto op = static_cast<CrossoverOp>(state.range(0));
    Rng rng(5);
    const auto a = random_permutation(100, rng);
    const auto b = random_permutation(100, rng);
    for (auto _ : state) benchmark::DoNotOptimize(crossover(a, b, op, 100, rng));
}
BENCHMARK(BM_Crossover)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

static void BM_Generation(benchmark::State& state)
{
    const auto inst = generate_ap_instance(6, 100, 100, 1, 0, 1000);
    auto config = EAConfig::ga_assignment();
    config.generations = 10;
    const auto plan = ObfuscationPlan::uniform(1, ObfuscationMethod::none());
    for (auto _ : state) benchmark::DoNotOptimize(run(inst, config, plan, 7, {GenomeRecording::None}));
}
BENCHMARK(BM_Generation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
