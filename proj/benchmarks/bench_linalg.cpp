#include <benchmark/benchmark.h>

#include "dmod/zpm_linalg.hpp"

using namespace dmod;

namespace {

ZpmMatrix random_system(uint64_t p, unsigned m, unsigned rows, unsigned cols, uint64_t seed) {
    Zpm zr(p, m);
    ZpmMatrix M(zr, rows, cols);
    Rng rng(seed);
    // sparse-ish rows, like the assembled semilinear systems
    for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < cols; ++j)
            if (rng.below(4) == 0) M.at(i, j) = rng.below(zr.q());
    return M;
}

} // namespace

static void KernelLogSize(benchmark::State& state) {
    uint64_t p = state.range(0);
    unsigned cols = static_cast<unsigned>(state.range(1));
    ZpmMatrix M = random_system(p, 3, 2 * cols, cols, 42);
    for (auto _ : state) {
        unsigned k = kernel_log_size(M);
        benchmark::DoNotOptimize(k);
    }
    state.SetComplexityN(cols);
}
BENCHMARK(KernelLogSize)->Args({2, 128})->Args({2, 256})->Args({2, 512})
    ->Args({5, 128})->Args({5, 256})->Complexity();

static void HowellWithKernelBasis(benchmark::State& state) {
    unsigned cols = static_cast<unsigned>(state.range(0));
    ZpmMatrix M = random_system(2, 3, 2 * cols, cols, 7);
    for (auto _ : state) {
        HowellForm hf = howell(M);
        benchmark::DoNotOptimize(hf.kernel_log_size);
    }
}
BENCHMARK(HowellWithKernelBasis)->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
