#include <benchmark/benchmark.h>

#include "wavemanifold/fv_oracle.hpp"
#include "wavemanifold/riemann.hpp"

using namespace wm;

namespace {

const ModelParams kParams;

void BM_HugoniotCurve(benchmark::State& st) {
    const HugoniotCoeffs h = hugoniot_coeffs(kParams, {0.4, -1.3, 0.7});
    double z = -3.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(hugoniot_at(h, z));
        z = z > 3.0 ? -3.0 : z + 1e-3;
    }
}
BENCHMARK(BM_HugoniotCurve);

void BM_RegionClassify(benchmark::State& st) {
    const ManifoldPoint q{1.0, -2.0, 1.0};
    for (auto _ : st) benchmark::DoNotOptimize(region_classify(kParams, q));
}
BENCHMARK(BM_RegionClassify);

void BM_Rarefaction(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(integrate_rarefaction(kParams, {-2.0, -2.0, 0.0}, Family::slow));
}
BENCHMARK(BM_Rarefaction)->Unit(benchmark::kMicrosecond);

void BM_SlowWaveCurve(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(build_slow_wave_curve(kParams, {-2.0, -2.0, 0.0}));
}
BENCHMARK(BM_SlowWaveCurve)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& st) {
    const State wl = left_state(kParams, {-2.0, -2.0, 0.0});
    const State wr = left_state(kParams, {2.0, 4.0, 0.0});
    for (auto _ : st) benchmark::DoNotOptimize(solve(kParams, wl, wr));
}
BENCHMARK(BM_Solve)->Unit(benchmark::kMillisecond);

void BM_Rusanov(benchmark::State& st) {
    const RiemannSolution sol =
        solve(kParams, left_state(kParams, {-2.0, -2.0, 0.0}), left_state(kParams, {2.0, 4.0, 0.0}));
    const GridSpec g = default_grid(sol, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(simulate(kParams, sol.w_left, sol.w_right, g));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Rusanov)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace

BENCHMARK_MAIN();
