#include "midsift/emd.hpp"
#include "midsift/pca.hpp"
#include "midsift/spectral.hpp"
#include "midsift/spline.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace midsift;

namespace {

Signal case_one(std::size_t n) {
    const double w = std::numbers::pi / 256;
    const std::vector<ToneSpec> tones{{0.5, 12 * w, 0.0}, {0.5, 8 * w, 0.0}};
    return add_noise(generate_multitone(tones, 0.0, 1.0, n), {0.01, 1});
}

void BM_SiftOnce(benchmark::State& state) {
    const auto s = case_one(static_cast<std::size_t>(state.range(0)));
    const auto strategy = static_cast<SiftStrategy>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sift_once(s, strategy));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SiftOnce)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1, 2}});

void BM_Decompose(benchmark::State& state) {
    const auto s = case_one(4097);
    SiftConfig cfg;
    cfg.strategy = static_cast<SiftStrategy>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose(s, cfg));
    }
}
BENCHMARK(BM_Decompose)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_SplineGrid(benchmark::State& state) {
    const auto knots_n = static_cast<std::size_t>(state.range(0));
    std::vector<Knot> knots;
    for (std::size_t i = 0; i < knots_n; ++i) {
        const double t = 10.0 * static_cast<double>(i);
        knots.push_back({t, std::sin(0.3 * t)});
    }
    for (auto _ : state) {
        const NaturalCubicSpline s(knots);
        benchmark::DoNotOptimize(s.evaluate_grid(0.0, 1.0, 10 * knots_n));
    }
}
BENCHMARK(BM_SplineGrid)->Range(64, 8192);

void BM_Periodogram(benchmark::State& state) {
    const auto s = case_one(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(periodogram(s));
    }
}
BENCHMARK(BM_Periodogram)->Range(1 << 10, 1 << 18);

void BM_Jacobi(benchmark::State& state) {
    const auto s = case_one(8192);
    const auto e = embed(s, 4, static_cast<std::size_t>(state.range(0)));
    const auto model = autocovariance(e);
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobi_eigen(model.covariance));
    }
}
BENCHMARK(BM_Jacobi)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
