#include <benchmark/benchmark.h>

#include <vector>

#include "hypb/conefield.hpp"
#include "hypb/dynamics.hpp"
#include "hypb/envelope.hpp"
#include "hypb/sampling.hpp"

using namespace hypb;

namespace {

std::vector<Point> points_in_d(const SquareTable& t, std::size_t n) {
    Rng rng(7);
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(sample_region_d(t, rng));
    return pts;
}

}  // namespace

static void BM_ForwardTangency(benchmark::State& state) {
    const SquareTable t(0.09);
    const auto pts = points_in_d(t, 4096);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(t.forward_tangency(pts[i++ & 4095]));
    }
}
BENCHMARK(BM_ForwardTangency);

static void BM_Step(benchmark::State& state) {
    const SquareTable t(0.09);
    Point p = points_in_d(t, 1).front();
    for (auto _ : state) {
        p = step(t, p).post;
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_Step);

static void BM_Lyapunov(benchmark::State& state) {
    const SquareTable t(0.05);
    const Point p = points_in_d(t, 1).front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(lyapunov(t, p, static_cast<std::size_t>(state.range(0))));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lyapunov)->Arg(10000)->Arg(100000);

static void BM_ClassifyPoint(benchmark::State& state) {
    const SquareTable t(0.09);
    const auto pts = points_in_d(t, 1024);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_point(t, pts[i++ & 1023]));
    }
}
BENCHMARK(BM_ClassifyPoint);

static void BM_EventualStrictness(benchmark::State& state) {
    const SquareTable t(0.05);
    std::vector<Point> pts;
    for (const Point& p : points_in_d(t, 4096)) {
        if (classify_point(t, p) == RegionLabel::Dh) pts.push_back(p);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eventual_strictness(t, pts[i++ % pts.size()], 10000));
    }
}
BENCHMARK(BM_EventualStrictness);

static void BM_SecantEnvelope(benchmark::State& state) {
    const ConvexPolygon square = ConvexPolygon::unit_square();
    for (auto _ : state) {
        benchmark::DoNotOptimize(secant_envelope(square, 0.18, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_SecantEnvelope)->Arg(256)->Arg(2048);
BENCHMARK_MAIN();
