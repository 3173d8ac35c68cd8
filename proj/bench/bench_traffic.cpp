#include <benchmark/benchmark.h>

#include "hypertraffic/generators.hpp"
#include "hypertraffic/traffic.hpp"

using namespace hypertraffic;

namespace {

const Graph& workload() {
    static const Graph g = gen_tessellation(5, 4, 8);
    return g;
}

void BM_PairProfileSerial(benchmark::State& state) {
    const Graph& g = workload();
    for (auto _ : state) benchmark::DoNotOptimize(serial::pair_profile(g, g.max_depth()));
}

void BM_PairProfileParallel(benchmark::State& state) {
    const Graph& g = workload();
    EngineOptions opts;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pair_profile(g, g.max_depth(), opts));
}

void BM_NodeLoadsSerial(benchmark::State& state) {
    const Graph& g = workload();
    const auto f = RateFunction::exponential(1.5);
    for (auto _ : state) benchmark::DoNotOptimize(serial::node_loads(g, f, g.max_depth()));
}

void BM_NodeLoadsParallel(benchmark::State& state) {
    const Graph& g = workload();
    const auto f = RateFunction::exponential(1.5);
    EngineOptions opts;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(node_loads(g, f, g.max_depth(), opts));
}

}  // namespace

BENCHMARK(BM_PairProfileSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PairProfileParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NodeLoadsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NodeLoadsParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
