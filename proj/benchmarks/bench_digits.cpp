#include <benchmark/benchmark.h>

#include "cotsum/montecarlo.hpp"

using namespace cotsum;

namespace {

void BM_digit_chain(benchmark::State& state) {
    const std::uint64_t K = std::uint64_t(state.range(0));
    Rng rng(7);
    for (auto _ : state) {
        DigitChain chain = DigitChain::gauss_start(rng);
        double s = 0;
        for (std::uint64_t k = 0; k < K; ++k) s += double(chain.next(rng));
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(K));
}
BENCHMARK(BM_digit_chain)->Arg(100)->Arg(10000);

void BM_sample_alpha_gauss(benchmark::State& state) {
    Rng rng(13);
    DensitySpec d = DensitySpec::gauss_();
    for (auto _ : state) benchmark::DoNotOptimize(sample_alpha(d, rng).fraction());
}
BENCHMARK(BM_sample_alpha_gauss);

} // namespace
