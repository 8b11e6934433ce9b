#include <benchmark/benchmark.h>

#include "mwu/geometry.hpp"
#include "mwu/map.hpp"
#include "mwu/orbit.hpp"

namespace {

void BM_MwuStep(benchmark::State& state) {
    const mwu::MapParams p{25.0, 0.4};
    double x = 0.3;
    for (auto _ : state) {
        x = mwu::mwu_step(x, p);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_MwuStep);

void BM_AdaptiveIterate(benchmark::State& state) {
    const auto rule = mwu::RateRule::gaussian_bump(20.0, 30.0, 10.0);
    const auto n = state.range(0);
    for (auto _ : state) {
        mwu::AdaptiveOrbit orbit(0.3, rule, 0.4);
        for (std::int64_t i = 0; i < n; ++i) orbit.step();
        benchmark::DoNotOptimize(orbit.share());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_AdaptiveIterate)->Arg(1000)->Arg(10000);

void BM_IntervalImage(benchmark::State& state) {
    const mwu::MapParams p{25.0, 0.4};
    mwu::Interval I{0.1, 0.9};
    for (auto _ : state) {
        auto img = mwu::interval_image(I, p);
        benchmark::DoNotOptimize(img);
    }
}
BENCHMARK(BM_IntervalImage);

}  // namespace

BENCHMARK_MAIN();
