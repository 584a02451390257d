// Serial reference kernels against their OpenMP versions, and the necklace
// fast path against brute force.

#include "loopgrowth/freeloop.hpp"
#include "loopgrowth/torsion.hpp"

#include <benchmark/benchmark.h>

using namespace loopgrowth;

namespace {

void BM_NecklaceSerial(benchmark::State& state)
{
    GradedAlphabet a({1, 1, 2});
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::hh_necklace(a, N));
}

void BM_NecklaceParallel(benchmark::State& state)
{
    GradedAlphabet a({1, 1, 2});
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(hh_necklace(a, N));
}

void BM_BruteForceSerial(benchmark::State& state)
{
    GradedAlphabet a({1, 1});
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::hh_bruteforce(a, N));
}

void BM_BruteForceParallel(benchmark::State& state)
{
    GradedAlphabet a({1, 1});
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(hh_bruteforce(a, N));
}

void BM_LyndonSerial(benchmark::State& state)
{
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::lyndon_degree_counts(2, 3, N));
}

void BM_LyndonParallel(benchmark::State& state)
{
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(lyndon_degree_counts(2, 3, N));
}

// The fast path should be at least ten times quicker at N = 20.
void BM_TwoSpheresNecklace(benchmark::State& state)
{
    GradedAlphabet a({1, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(hh_necklace(a, 20));
}

void BM_TwoSpheresBruteForce(benchmark::State& state)
{
    GradedAlphabet a({1, 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(hh_bruteforce(a, 20));
}

}  // namespace

BENCHMARK(BM_NecklaceSerial)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NecklaceParallel)->Arg(30)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LyndonSerial)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LyndonParallel)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoSpheresNecklace)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TwoSpheresBruteForce)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
