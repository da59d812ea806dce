// Serial vs parallel timings for the data-parallel kernels. The
// adaptive filter itself is a recursion and has no parallel variant,
// so it only appears here inside the sweep, whose rows are independent.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ecgsep/cascade.hpp"
#include "ecgsep/dft.hpp"
#include "ecgsep/metrics.hpp"
#include "ecgsep/spectral.hpp"
#include "ecgsep/synth.hpp"

using namespace ecgsep;

namespace {

Exec exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void set_label(benchmark::State& state) {
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

std::vector<double> bench_samples(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> noise(0.0, 0.1);
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t)
        x[t] = std::sin(2.0 * std::numbers::pi * 2.5 * static_cast<double>(t) / 500.0) +
               noise(rng);
    return x;
}

void dft_forward(benchmark::State& state) {
    const auto x = bench_samples(4096);
    for (auto _ : state)
        benchmark::DoNotOptimize(dft::forward(x, exec_of(state)));
    set_label(state);
}

void spectral_separation(benchmark::State& state) {
    Signal mix{bench_samples(10000), 500.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(separate_spectral(mix, SpectralConfig{},
                                                   exec_of(state)));
    set_label(state);
}

void synth_generate(benchmark::State& state) {
    SynthParams params;
    params.duration_s = 30.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate(params, exec_of(state)));
    set_label(state);
}

void cascade_sweep(benchmark::State& state) {
    SynthParams params;
    params.duration_s = 20.0;
    SynthOutput data = generate(params);
    const SweepGrid grid{{1, 2, 5, 10}, {1e-5, 1e-7}, {1, 2, 5, 10}};
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sweep(data.recording, data.true_child, grid,
                                           CascadeConfig{}, 5000, exec_of(state)));
    set_label(state);
}

BENCHMARK(dft_forward)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(spectral_separation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(synth_generate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(cascade_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
