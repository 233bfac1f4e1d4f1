#include <nclab/cubes.hpp>
#include <nclab/distance_profile.hpp>
#include <nclab/solver.hpp>
#include <nclab/strategies.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace nclab;

namespace {

PointSet random_half(Point n, std::uint64_t seed)
{
    return random_partition(n, 2, seed)[0];
}

void BM_ShiftIntersect(benchmark::State & state)
{
    const Point n = static_cast<Point>(state.range(0));
    const PointSet a = random_half(n, 1);
    Point d = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(a & a.shifted_down(d));
        d = d % 1000 + 1;
    }
}
BENCHMARK(BM_ShiftIntersect)->RangeMultiplier(16)->Range(1 << 8, 1 << 20);

void BM_DistanceCountsDirect(benchmark::State & state)
{
    const PointSet a = random_half(static_cast<Point>(state.range(0)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(distance_counts_direct(a));
}
BENCHMARK(BM_DistanceCountsDirect)->RangeMultiplier(4)->Range(1 << 8, 1 << 14);

void BM_DistanceCountsFft(benchmark::State & state)
{
    const PointSet a = random_half(static_cast<Point>(state.range(0)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(distance_counts_fft(a));
}
BENCHMARK(BM_DistanceCountsFft)->RangeMultiplier(4)->Range(1 << 8, 1 << 20);

void BM_GreedyClaimerMove(benchmark::State & state)
{
    const PointSet a = random_half(static_cast<Point>(state.range(0)), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(greedy_claimer_move(a, Distance(3)));
}
BENCHMARK(BM_GreedyClaimerMove)->RangeMultiplier(16)->Range(1 << 8, 1 << 20);

void BM_SolveInterval(benchmark::State & state)
{
    const Point n = static_cast<Point>(state.range(0));
    for (auto _ : state) {
        Solver solver;
        benchmark::DoNotOptimize(solver.solve(n).value);
    }
}
BENCHMARK(BM_SolveInterval)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_CubeSearch(benchmark::State & state)
{
    const PointSet a = random_half(static_cast<Point>(state.range(0)), 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(find_nondegenerate_cube(a, static_cast<int>(state.range(1))).status);
}
BENCHMARK(BM_CubeSearch)->Args({1024, 6})->Args({4096, 8})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
