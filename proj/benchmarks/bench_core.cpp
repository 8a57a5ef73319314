// Microbenchmarks for the raster kernels that dominate pipeline runtime.

#include <benchmark/benchmark.h>

#include "vre/fixture.hpp"
#include "vre/grid.hpp"
#include "vre/wind.hpp"

namespace {

vre::GridSpec make_spec(std::size_t n, double cell) {
    vre::GridSpec s;
    s.n_rows = n;
    s.n_cols = n;
    s.cell_size = cell;
    return s;
}

void bm_compute_slope(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const vre::NumericGrid dem = vre::value_noise(make_spec(n, 50.0), 1, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(vre::compute_slope(dem));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(dem.size()));
}
BENCHMARK(bm_compute_slope)->Arg(256)->Arg(1024);

void bm_buffer_mask(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const vre::GridSpec s = make_spec(n, 100.0);
    const vre::NumericGrid noise = vre::value_noise(s, 2, 8);
    vre::Mask m(s);
    for (std::size_t i = 0; i < m.size(); ++i) m.set(i, noise[i] > 0.8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(vre::buffer_mask(m, 500.0));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(m.size()));
}
BENCHMARK(bm_buffer_mask)->Arg(256)->Arg(1024);

void bm_annual_energy(benchmark::State& state) {
    const vre::TurbineSpec& t = vre::default_turbine_db()[1];
    const vre::WindDistribution d = vre::speed_distribution(7.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(vre::annual_energy(t, 100.0, d));
    }
}
BENCHMARK(bm_annual_energy);

}  // namespace

BENCHMARK_MAIN();
