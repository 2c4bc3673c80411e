// Parallel kernels against their serial references.
#include "lacuna/operators.hpp"
#include "lacuna/packets.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace lacuna;

namespace {

Field2D noise(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Field2D f(n);
    for (auto& v : f.values()) v = {g(rng), g(rng)};
    return f;
}

void BM_MaximalDirectional(benchmark::State& st) {
    const auto f = noise(st.range(0));
    const auto dirs = make_lacunary(8).directions();
    for (auto _ : st) benchmark::DoNotOptimize(maximal_directional(f, dirs, DirectionalKind::H));
}

void BM_MaximalDirectionalReference(benchmark::State& st) {
    const auto f = noise(st.range(0));
    const auto dirs = make_lacunary(8).directions();
    for (auto _ : st) benchmark::DoNotOptimize(reference::maximal_directional(f, dirs, DirectionalKind::H));
}

void BM_StrongMaximal(benchmark::State& st) {
    const auto f = noise(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(strong_maximal(f));
}

void BM_StrongMaximalReference(benchmark::State& st) {
    const auto f = noise(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(reference::strong_maximal(f));
}

void BM_Analysis(benchmark::State& st) {
    const auto f = noise(st.range(0));
    const auto g = ShiftedGrid::base(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(analysis(f, g, 1));
}

void BM_AnalysisReference(benchmark::State& st) {
    const auto f = noise(st.range(0));
    const auto g = ShiftedGrid::base(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(reference::analysis(f, g, 1));
}

}  // namespace

BENCHMARK(BM_MaximalDirectional)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaximalDirectionalReference)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StrongMaximal)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StrongMaximalReference)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Analysis)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalysisReference)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
