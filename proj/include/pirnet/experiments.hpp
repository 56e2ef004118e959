#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pirnet/config.hpp"
#include "pirnet/metrics.hpp"
#include "pirnet/mismatch.hpp"
#include "pirnet/netsim.hpp"
#include "pirnet/parallel.hpp"
#include "pirnet/report.hpp"

namespace pirnet {

// ---- single trials of the cricket circuit

struct TrialCounts {
    double ipi = 0.0;
    int ln2_first = 0;   // LN2 spikes attributed to each pulse
    int ln2_second = 0;
    int ln3 = 0;
    int ln4 = 0;
};

std::uint64_t trial_seed(std::uint64_t seed, int trial, int ipi_index);

SpikeTrain trial_stimulus(const ExperimentConfig& cfg, double ipi, double noise, std::uint64_t seed);
double trial_duration(const ExperimentConfig& cfg, double ipi);

TrialCounts run_trial(const Network& net, const ExperimentConfig& cfg, double ipi, double noise,
                      std::uint64_t seed, double dt);

// ---- population characterization

std::vector<Instance> characterization_population(const ExperimentConfig& cfg);
PopulationResult characterize_population(const ExperimentConfig& cfg, Exec exec = Exec::parallel);
Report run_characterization(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

// ---- IPI and noise sweeps

struct IpiCell {
    double ipi = 0.0;
    SummaryStats ln3, ln4;
    double response_rate = 0.0;  // fraction of trials with LN4 >= 1
};

struct NoiseLevelResult {
    double noise = 0.0;
    std::vector<IpiCell> cells;  // in ipi_set order
    std::vector<ClassificationOutcome> trials;
    std::vector<std::vector<TrialCounts>> raw;  // [trial][ipi]
    double false_positive_rate = 0.0;  // trials with any off-target LN4 spike
    double false_negative_rate = 0.0;  // trials with a silent target
    double correct_rate = 0.0;

    const IpiCell& cell(double ipi) const;
};

struct IpiSweepResult {
    std::string point;
    std::vector<NoiseLevelResult> levels;
};

IpiSweepResult ipi_sweep(const ExperimentConfig& cfg, const CircuitPresets& presets,
                         const std::vector<double>& noise_levels, Exec exec = Exec::parallel);
Report run_ipi_sweep(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

// ---- classification boundary

struct GridPoint {
    double w_an1_ln3 = 0.0;
    double w_ln3_ln4 = 0.0;
    bool pass = false;
    int false_positive_trials = 0;
    int false_negative_trials = 0;
    int trials_run = 0;
};

struct BoundaryResult {
    double noise = 0.0;
    double drift = 1.0;
    std::uint64_t seed = 0;
    std::vector<GridPoint> points;  // row-major: w_ln3_ln4 outer, w_an1_ln3 inner
    std::size_t rows = 0, cols = 0;

    std::size_t n_pass() const;
    std::vector<bool> pass_mask() const;
};

// stop_on_failure ends a grid point at its first incorrect trial
BoundaryResult boundary_sweep(const ExperimentConfig& cfg, double noise, std::uint64_t seed, double drift,
                              Exec exec = Exec::parallel, bool stop_on_failure = true);
Report run_boundary_sweep(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

// ---- delay configuration sweep

struct DelaySweepPoint {
    double w_inh = 0.0;
    double w_exc = 0.0;
    DelayMetrics m;
};

struct DelaySweepResult {
    std::vector<DelaySweepPoint> points;  // w_exc outer, w_inh inner
    bool tau_inh_monotone = false;       // non-decreasing in w_inh at fixed w_exc
    bool v_max_monotone = false;         // non-decreasing in w_exc at fixed w_inh
    double tau_inh_lo = 0, tau_inh_hi = 0, v_max_lo = 0, v_max_hi = 0;
};

DelaySweepResult delay_config_sweep(const ExperimentConfig& cfg, Exec exec = Exec::parallel);
Report run_delay_config_sweep(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

// ---- polychronous detection

struct PatternOutcome {
    std::string name;
    std::vector<double> onsets;
    std::vector<int> detector_spikes;
};

struct PolychronousResult {
    Network net;
    std::vector<PatternOutcome> patterns;  // matched, swapped, silent
};

PolychronousResult polychronous_demo(const ExperimentConfig& cfg);
Report run_polychronous_demo(const ExperimentConfig& cfg);

// ---- single detection run with traces

struct DetectResult {
    SpikeTrain stimulus;
    SimResult sim;
    TrialCounts counts;
};

DetectResult detect(const ExperimentConfig& cfg);
Report run_detect(const ExperimentConfig& cfg);

}  // namespace pirnet
