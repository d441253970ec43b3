#include <benchmark/benchmark.h>

#include <random>

#include <siegel/blaschke.hpp>
#include <siegel/boundary.hpp>
#include <siegel/render.hpp>
#include <siegel/rotation.hpp>
#include <siegel/thurston.hpp>

using namespace siegel;

namespace {

const RotationNumber kGolden = RotationNumber::golden_mean();

void BM_PhiInverse(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(phi_inverse(SpherePoint(Complex(3.0, 1.0))));
}
BENCHMARK(BM_PhiInverse);

void BM_RotationNumber(benchmark::State& state) {
    const auto B = phi_inverse(SpherePoint(2.0)).with_angle(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(rotation_number(B, 0.0, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}
BENCHMARK(BM_RotationNumber)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_TunePrefactor(benchmark::State& state) {
    const auto B = phi_inverse(SpherePoint::infinity());
    TuneOptions options;
    options.final_iterations = 100'000;
    for (auto _ : state) benchmark::DoNotOptimize(tune_prefactor(B.p(), B.q(), kGolden, 1e-4, options));
}
BENCHMARK(BM_TunePrefactor)->Unit(benchmark::kMillisecond);

void BM_BoundaryOrbit(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(boundary_orbit(SpherePoint::infinity(), kGolden, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BoundaryOrbit)->Arg(1'000)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMicrosecond);

void BM_QuasicircleDelta(benchmark::State& state) {
    const auto curve = boundary_orbit(SpherePoint::infinity(), kGolden, 10'000);
    const auto trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(quasicircle_delta(curve, trials, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QuasicircleDelta)->Arg(10'000)->Unit(benchmark::kMicrosecond);

void BM_LeadingEigenvalue(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ThurstonMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng) < 0.4 ? u(rng) : 0.0;
    for (auto _ : state) benchmark::DoNotOptimize(leading_eigenvalue(a));
}
BENCHMARK(BM_LeadingEigenvalue)->Arg(8)->Arg(64);

void BM_ClassifyGrid(benchmark::State& state) {
    const auto g = make_map(SpherePoint(Complex(3.0, 1.0)), kGolden);
    RasterSpec spec;
    spec.px_width = spec.px_height = static_cast<std::size_t>(state.range(0));
    spec.max_iter = 200;
    for (auto _ : state) benchmark::DoNotOptimize(classify_grid(g, spec));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_ClassifyGrid)->Arg(64)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
