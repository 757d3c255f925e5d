#include <vector>

#include <benchmark/benchmark.h>

#include "collectorlab/collectorlab.hpp"

using namespace collectorlab;

static void BM_AliasDraw(benchmark::State& state) {
    const auto family = build_zipf(static_cast<std::size_t>(state.range(0)), 1.0);
    const AliasTable table(family.probs());
    auto rng = Xoshiro256pp::for_stream(0, 0);
    for (auto _ : state) benchmark::DoNotOptimize(table(rng));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AliasDraw)->Arg(100)->Arg(1 << 20);

static void BM_Episode(benchmark::State& state) {
    const auto family = build_mixed(static_cast<std::size_t>(state.range(0)), 1.0);
    const AliasTable table(family.probs());
    std::vector<std::uint8_t> seen;
    std::uint64_t i = 0;
    for (auto _ : state) {
        auto rng = Xoshiro256pp::for_stream(1, i++);
        benchmark::DoNotOptimize(run_episode(table, rng, seen));
    }
}
BENCHMARK(BM_Episode)->Arg(25)->Arg(100);

static void BM_ExpectationIntegral(benchmark::State& state) {
    const auto family = build_mixed(static_cast<std::size_t>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(expectation_integral(family).expectation);
}
BENCHMARK(BM_ExpectationIntegral)->Arg(50)->Arg(400);

static void BM_VarianceExact(benchmark::State& state) {
    const auto family = build_zipf(static_cast<std::size_t>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(variance_exact(family).variance);
}
BENCHMARK(BM_VarianceExact)->Arg(100)->Arg(10000);

static void BM_InclusionExclusionCdf(benchmark::State& state) {
    const auto family = build_zipf(static_cast<std::size_t>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(cdf_inclusion_exclusion(family, 200));
}
BENCHMARK(BM_InclusionExclusionCdf)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Simulate(benchmark::State& state) {
    const auto family = build_uniform(100);
    for (auto _ : state) benchmark::DoNotOptimize(simulate(family, 10'000, 0, std::nullopt, {1}));
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
