#include <benchmark/benchmark.h>

#include "dmod/centralizer.hpp"

using namespace dmod;

static void EndLogSizeHeight2(benchmark::State& state) {
    DieudonneModule D = from_slopes(2, SlopeData{{{1, 1, 1}}}, 5);
    unsigned m = static_cast<unsigned>(state.range(0));
    unsigned N = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        unsigned k = end_log_size(D, m, N, LieConstraint::full());
        benchmark::DoNotOptimize(k);
    }
}
BENCHMARK(EndLogSizeHeight2)->Args({1, 8})->Args({1, 16})->Args({2, 16})->Args({3, 16});

static void EndLogSizeHeight6(benchmark::State& state) {
    DieudonneModule D = from_slopes(2, SlopeData{{{2, 1, 1}, {1, 2, 1}}}, 4);
    unsigned N = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        unsigned k = end_log_size(D, 1, N, LieConstraint::full());
        benchmark::DoNotOptimize(k);
    }
    state.SetComplexityN(N);
}
BENCHMARK(EndLogSizeHeight6)->Arg(6)->Arg(12)->Arg(18)->Arg(24)->Complexity();

static void GammaSupersingular(benchmark::State& state) {
    DieudonneModule D = from_slopes(2, SlopeData{{{1, 1, 1}}}, 5);
    for (auto _ : state) {
        PointCountCache cache; // cold every iteration
        int g = gamma(D, 2, LieConstraint::full(), {}, &cache);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(GammaSupersingular);

static void BuildEndSystem(benchmark::State& state) {
    DieudonneModule D = from_slopes(3, SlopeData{{{2, 1, 1}, {1, 2, 1}}}, 4);
    unsigned N = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        EndSystem sys = build_end_system(D, 2, N, LieConstraint::full());
        benchmark::DoNotOptimize(sys.mat.e.data());
    }
}
BENCHMARK(BuildEndSystem)->Arg(6)->Arg(12)->Arg(24);

BENCHMARK_MAIN();
