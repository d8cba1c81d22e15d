#include <benchmark/benchmark.h>

#include "curvewidth/bodies.hpp"
#include "curvewidth/measures.hpp"

using namespace curvewidth;

namespace {

Space space_of(int64_t code) {
    switch (code) {
        case 0: return euclidean(2);
        case 1: return spherical(2);
        default: return hyperbolic(2);
    }
}

void BM_Distance(benchmark::State& state) {
    Space s = space_of(state.range(0));
    CounterRng rng(7);
    std::vector<Point> pts;
    for (int i = 0; i < 256; ++i) pts.push_back(sample_in_ball(reference_point(s), 1.0, rng));
    size_t i = 0;
    for (auto _ : state) {
        double d = distance(pts[i & 255], pts[(i + 7) & 255]);
        benchmark::DoNotOptimize(d);
        ++i;
    }
}
BENCHMARK(BM_Distance)->Arg(0)->Arg(1)->Arg(2);

void BM_GeodesicRoundTrip(benchmark::State& state) {
    Space s = space_of(state.range(0));
    CounterRng rng(11);
    Point a = sample_in_ball(reference_point(s), 0.5, rng);
    Point b = sample_in_ball(reference_point(s), 0.9, rng);
    for (auto _ : state) {
        Point back = geodesic_point(direction(a, b), distance(a, b));
        benchmark::DoNotOptimize(back);
    }
}
BENCHMARK(BM_GeodesicRoundTrip)->Arg(0)->Arg(1)->Arg(2);

void BM_McVolumeReuleaux(benchmark::State& state) {
    Space s = space_of(state.range(0));
    Body rt(reuleaux_triangle(s, 1.0));
    for (auto _ : state) {
        VolumeEstimate est = mc_volume(rt, 100000, CounterRng(3));
        benchmark::DoNotOptimize(est.value);
    }
}
BENCHMARK(BM_McVolumeReuleaux)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Circumradius(benchmark::State& state) {
    Space s = space_of(state.range(0));
    Body rt(reuleaux_triangle(s, 1.0));
    for (auto _ : state) {
        RadiusResult r = circumradius(rt);
        benchmark::DoNotOptimize(r.radius);
    }
}
BENCHMARK(BM_Circumradius)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CapVolume(benchmark::State& state) {
    Space s = space_of(state.range(0));
    for (auto _ : state) {
        double v = cap_volume(s, 1.1, 0.35);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_CapVolume)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
