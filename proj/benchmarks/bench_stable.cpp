#include <benchmark/benchmark.h>

#include "cotsum/stable.hpp"

using namespace cotsum;

namespace {

void BM_stable_cdf(benchmark::State& state) {
    StableDist dist(StableParams{0.5, 1.0});
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dist.cdf(x));
        x += 0.37;
        if (x > 40) x = 0.1;
    }
}
BENCHMARK(BM_stable_cdf);

void BM_stable_cdf_fast(benchmark::State& state) {
    StableDist dist(StableParams{0.5, 1.0});
    auto fast = dist.cdf_fast();
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fast(x));
        x += 0.37;
        if (x > 40) x = 0.1;
    }
}
BENCHMARK(BM_stable_cdf_fast);

void BM_stable_sample(benchmark::State& state) {
    StableDist dist(StableParams{1.0, 1.0});
    Rng rng(99);
    for (auto _ : state) benchmark::DoNotOptimize(dist.sample(rng));
}
BENCHMARK(BM_stable_sample);

} // namespace
