// serial reference vs OpenMP kernels
#include <benchmark/benchmark.h>

#include "pirnet/config.hpp"
#include "pirnet/experiments.hpp"

using namespace pirnet;

namespace {

const ExperimentConfig& cfg() {
    static const ExperimentConfig c = [] {
        ExperimentConfig x = default_config();
        x.trials = 10;
        return x;
    }();
    return c;
}

void BM_population(benchmark::State& st) {
    Exec e = st.range(0) ? Exec::parallel : Exec::serial;
    auto pop = characterization_population(cfg());
    const auto& d = delay_preset(cfg(), cfg().characterization_preset);
    SpikeTrain stim = delay_stim(d.n_stim_spikes, d.stim_window);
    for (auto _ : st) {
        auto r = population_characterize(pop, stim, cfg().characterization_duration, cfg().dt, e);
        benchmark::DoNotOptimize(r.n_all_valid);
    }
    st.SetItemsProcessed(st.iterations() * pop.size());
}

void BM_ipi_sweep(benchmark::State& st) {
    Exec e = st.range(0) ? Exec::parallel : Exec::serial;
    auto presets = circuit_presets(cfg(), cfg().circuit_point);
    for (auto _ : st) {
        auto r = ipi_sweep(cfg(), presets, {0.0, 0.5}, e);
        benchmark::DoNotOptimize(r.levels.size());
    }
    st.SetItemsProcessed(st.iterations() * 2 * cfg().trials * cfg().ipi_set.size());
}

void BM_delay_sweep(benchmark::State& st) {
    Exec e = st.range(0) ? Exec::parallel : Exec::serial;
    for (auto _ : st) {
        auto r = delay_config_sweep(cfg(), e);
        benchmark::DoNotOptimize(r.points.size());
    }
}

}  // namespace

// arg 0 = serial, 1 = parallel
BENCHMARK(BM_population)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ipi_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_delay_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
