// Serial reference against the OpenMP kernels on the two data-parallel
// workloads: classification grids and geodesic bundles.

#include <benchmark/benchmark.h>

#include <cmath>

#include "nullgeo/catalog.hpp"
#include "nullgeo/sweep.hpp"

using namespace nullgeo;

namespace {

std::vector<Vec4> kerr_grid(std::size_t n) {
    const auto& e = builtin_catalog().find("kerr");
    return grid_points(e.sample, {{1, 3.0, 20.0, n}, {2, 0.3, 2.8, n}});
}

std::vector<GeodesicState> schwarzschild_rays(std::size_t n) {
    const auto& e = builtin_catalog().find("schwarzschild");
    std::vector<GeodesicState> out;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = 0.1 + 2.0 * static_cast<double>(k) / static_cast<double>(n);
        const Vec4 x{0.0, 8.0, 1.5707963267948966, 0.0};
        const Mat4 g = metric_value(e.metric, x, e.metric.params);
        out.push_back({x, null_project(g, {1.0, std::cos(a), 0.0, 0.1 * std::sin(a)}, 0), 0.0});
    }
    return out;
}

void BM_ClassifySerial(benchmark::State& state) {
    const auto& e = builtin_catalog().find("kerr");
    const auto pts = kerr_grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(classify_sweep_serial(e.metric, pts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}

void BM_ClassifyParallel(benchmark::State& state) {
    const auto& e = builtin_catalog().find("kerr");
    const auto pts = kerr_grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(classify_sweep(e.metric, pts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}

void BM_BundleSerial(benchmark::State& state) {
    const auto& e = builtin_catalog().find("schwarzschild");
    const auto rays = schwarzschild_rays(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(integrate_bundle_serial(e.metric, {}, rays, 20.0));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rays.size()));
}

void BM_BundleParallel(benchmark::State& state) {
    const auto& e = builtin_catalog().find("schwarzschild");
    const auto rays = schwarzschild_rays(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(integrate_bundle(e.metric, {}, rays, 20.0));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rays.size()));
}

}  // namespace

BENCHMARK(BM_ClassifySerial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyParallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BundleSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BundleParallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
