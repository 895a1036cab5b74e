// Serial reference vs OpenMP kernels: prime scans and subgroup enumeration.

#include <benchmark/benchmark.h>

#include "lgi/ecfp.hpp"
#include "lgi/localglobal.hpp"

using namespace lgi;

static void BM_LocalScan(benchmark::State& state)
{
    const bool parallel = state.range(0) != 0;
    const auto bound = static_cast<std::uint64_t>(state.range(1));
    const WeierstrassCurve e = counterexample_curve();
    for (auto _ : state) {
        ScanReport r = local_scan(e, 7, bound, {parallel, 0});
        benchmark::DoNotOptimize(r.entries.data());
    }
    state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_LocalScan)->ArgsProduct({{0, 1}, {10000, 100000}})->Unit(benchmark::kMillisecond);

static void BM_Enumerate(benchmark::State& state)
{
    const bool parallel = state.range(0) != 0;
    const auto ell = static_cast<std::uint32_t>(state.range(1));
    for (auto _ : state) {
        auto classes = enumerate_subgroups(ell, {false, parallel});
        benchmark::DoNotOptimize(classes.data());
    }
    state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_Enumerate)->ArgsProduct({{0, 1}, {5, 7}})->Unit(benchmark::kMillisecond);

static void BM_LemmaVerify(benchmark::State& state)
{
    const bool parallel = state.range(0) != 0;
    for (auto _ : state) {
        LemmaVerification v = lemma1_verify(7, {false, parallel});
        benchmark::DoNotOptimize(v.reports.data());
    }
    state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_LemmaVerify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
