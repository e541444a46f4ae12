#include "chenbound/buchstab.hpp"
#include "chenbound/chen.hpp"
#include "chenbound/goldbach.hpp"
#include "chenbound/quadrature.hpp"
#include "chenbound/wu.hpp"

#include <benchmark/benchmark.h>

using namespace chenbound;

static void SplineEval(benchmark::State& state) {
    const auto& sp = buchstab::default_spline();
    double u = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sp(u));
        u = u > 12.0 ? 1.0 : u + 0.0137;
    }
}
BENCHMARK(SplineEval);

static void SplineBuild(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(buchstab::Spline::build(static_cast<int>(state.range(0)), 10));
}
BENCHMARK(SplineBuild)->Arg(10)->Arg(20);

static void OdeReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(buchstab::OdeReference::solve(10.0, 1e-12));
}
BENCHMARK(OdeReference)->Unit(benchmark::kMillisecond);

static void Sigma(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(wu::sigma(3.0, 4.7, 3.2));
}
BENCHMARK(Sigma);

static void I1AtTwo(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(wu::i1(2.0, 2.6, 3.58));
}
BENCHMARK(I1AtTwo)->Unit(benchmark::kMillisecond);

static void I2(benchmark::State& state) {
    const auto p = wu::published_rows()[0].params();
    const int i = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(wu::i2(i, 2.3, p));
}
BENCHMARK(I2)->Arg(11)->Arg(16)->Arg(21)->Unit(benchmark::kMillisecond);

static void NineGridPublishedB(benchmark::State& state) {
    chen::Options o;
    o.b_source = chen::BSource::wu_published;
    for (auto _ : state) benchmark::DoNotOptimize(chen::solve_grid(chen::GridSpec::parse("nine"), o));
}
BENCHMARK(NineGridPublishedB)->Unit(benchmark::kMillisecond);

static void GoldbachCount(benchmark::State& state) {
    const goldbach::PrimeTable pt(1'000'000);
    for (auto _ : state) benchmark::DoNotOptimize(goldbach::d_count(999'998, pt));
}
BENCHMARK(GoldbachCount);

static void Sieve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(goldbach::PrimeTable(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(Sieve)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
