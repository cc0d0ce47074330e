#include <benchmark/benchmark.h>

#include "erw/dp.hpp"
#include "erw/engine.hpp"
#include "erw/enumerate.hpp"
#include "erw/moments.hpp"
#include "erw/philox.hpp"

using erw::MemorySpec;
using erw::StatisticSpec;
using erw::WalkParams;

namespace {

WalkParams params_at(double p) {
    WalkParams params;
    params.p = p;
    params.r = p;
    return params;
}

void BM_philox_block(benchmark::State& state) {
    erw::StepStream stream(42, 7);
    std::uint64_t blk = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(stream.block4(blk++));
    }
    state.SetItemsProcessed(state.iterations() * 4);
}
BENCHMARK(BM_philox_block);

void BM_simulate_steps(benchmark::State& state, const char* model) {
    const auto spec = MemorySpec::parse(model);
    const long n = state.range(0);
    std::uint64_t path = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            erw::engine::simulate_path(spec, params_at(0.6), n, 42, path++));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK_CAPTURE(BM_simulate_steps, first2, "first:2")->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_simulate_steps, last1, "last:1")->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_simulate_steps, first2_last1, "first:2+last:1")->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_simulate_steps, skipfirst2, "skipfirst:2")->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_simulate_steps, full, "full")->Arg(1 << 16);

void BM_enumerate(benchmark::State& state) {
    const auto spec = MemorySpec::first_last(2, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(erw::oracle::enumerate(spec, params_at(0.6), state.range(0)));
    }
}
BENCHMARK(BM_enumerate)->Arg(12)->Arg(16)->Arg(20);

void BM_dp_distribution(benchmark::State& state) {
    const auto spec = MemorySpec::first_last(2, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            erw::oracle::dp_distribution(spec, params_at(0.6), state.range(0)));
    }
}
BENCHMARK(BM_dp_distribution)->Arg(64)->Arg(256)->Arg(1024);

void BM_exact_moments(benchmark::State& state) {
    const auto spec = MemorySpec::last(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            erw::oracle::exact_moments(spec, params_at(0.6), state.range(0), 6));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_exact_moments)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
