#include <benchmark/benchmark.h>

#include "cotsum/montecarlo.hpp"
#include "cotsum/sums.hpp"

using namespace cotsum;

namespace {

const Angle kAlpha = Angle::dyadic((u128(0x9e3779b97f4a7c15ULL) << 64) | 0xf39cc0605cedc835ULL);

void BM_orbit_cot_sum(benchmark::State& state) {
    const std::uint64_t N = std::uint64_t(state.range(0));
    StatisticKind kind;
    kind.family = Family::thm1_signed_cot;
    for (auto _ : state) {
        benchmark::DoNotOptimize(statistic_value(kAlpha, N, kind).x);
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(N));
}
BENCHMARK(BM_orbit_cot_sum)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_orbit_power_sum(benchmark::State& state) {
    const std::uint64_t N = std::uint64_t(state.range(0));
    StatisticKind kind;
    kind.family = Family::p_cor_unsigned;
    kind.p = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(statistic_value(kAlpha, N, kind).x);
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(N));
}
BENCHMARK(BM_orbit_power_sum)->Arg(10000)->Arg(100000);

void BM_direct_sum_exact(benchmark::State& state) {
    Angle a = Angle::rational(612836, 1236437);
    for (auto _ : state) {
        benchmark::DoNotOptimize(direct_sum_exact(a, 300, Kernel::unsigned_reciprocal, 1));
    }
}
BENCHMARK(BM_direct_sum_exact);

void BM_verify_block_identity(benchmark::State& state) {
    Angle a = Angle::rational(612836, 1236437);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_block_identity(a, 1).blocks_checked);
    }
}
BENCHMARK(BM_verify_block_identity);

} // namespace
