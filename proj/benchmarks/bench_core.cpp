// Microbenchmarks for the hot paths: coefficient tabulation, kernel
// evaluation, density-matrix stepping, and oracle propagation.
#include <benchmark/benchmark.h>

#include <vector>

#include "oscbath/coeffs.hpp"
#include "oscbath/evolve.hpp"
#include "oscbath/oracle.hpp"

using namespace oscbath;

namespace {

BathSpec drude_spec(double alpha, double theta) {
    return {alpha, theta, {SpectralKind::drude, 1.0, {}}};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / double(n - 1));
    return g;
}

void BM_kernels(benchmark::State& state) {
    const BathSpec spec = drude_spec(0.1, 1.0);
    double tau = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels(spec, 1.0, tau));
        tau = (tau < 5.0) ? tau + 0.1 : 0.3;
    }
}
BENCHMARK(BM_kernels);

void BM_tabulate(benchmark::State& state) {
    const BathSpec spec = drude_spec(0.1, 1.0);
    const double t_max = static_cast<double>(state.range(0));
    const auto grid = linspace(0.0, t_max, 4 * state.range(0) + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tabulate(spec, 1.0, grid, {}, 1));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_tabulate)->Arg(10)->Arg(50)->Arg(200);

void BM_evolve_density(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const BathSpec spec = drude_spec(0.1, 1.0);
    const auto tab_grid = [&] {
        std::vector<double> g{0.0};
        for (int i = 0; i < 30; ++i) g.push_back(1e-3 * std::pow(1e3, i / 29.0));
        for (double t = 1.05; t < 10.3; t += 0.05) g.push_back(t);
        return g;
    }();
    const CoefficientTable table = tabulate(spec, 1.0, tab_grid, {}, 1);
    const auto grid = linspace(0.0, 10.0, 21);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evolve_density(ModelKind::FV, table, vacuum_state(dim), grid));
    }
}
BENCHMARK(BM_evolve_density)->Arg(20)->Arg(40);

void BM_oracle(benchmark::State& state) {
    const int n_modes = static_cast<int>(state.range(0));
    const OracleBath bath = discretize(drude_spec(0.05, 1.0), n_modes, 10.0);
    const auto grid = linspace(0.0, 10.0, 101);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            exact_evolution(ModelKind::RW, bath, 0.05, 1.0, grid));
    }
}
BENCHMARK(BM_oracle)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
