#include <benchmark/benchmark.h>

#include <random>

#include "metricgraph/density.hpp"
#include "metricgraph/gauge.hpp"
#include "metricgraph/matrix.hpp"

using namespace metricgraph;

namespace {

SquareMatrix random_semimetric(std::size_t n, unsigned seed = 1) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.05, 2.0);
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = dist(rng);
    return m;
}

void BM_MinPlusProduct(benchmark::State& state) {
    const auto m = random_semimetric(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(min_plus_product(m, m));
}

void BM_OnesClosure(benchmark::State& state) {
    const auto phi = random_semimetric(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(triangular_gauge(phi, WeightScheme::ones()));
}

void BM_HarmonicGauge(benchmark::State& state) {
    const auto phi = random_semimetric(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(triangular_gauge(phi, WeightScheme::harmonic(), 4));
}

void BM_DensityMap(benchmark::State& state) {
    const auto d =
        triangular_gauge(random_semimetric(static_cast<std::size_t>(state.range(0))),
                         WeightScheme::ones())
            .distances;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            density_map(d, {}, std::nullopt, RadialWeight{2.0}, MassMeasure::lebesgue()));
}

}  // namespace

BENCHMARK(BM_MinPlusProduct)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_OnesClosure)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HarmonicGauge)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityMap)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
