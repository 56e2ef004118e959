#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pirnet/delay.hpp"
#include "pirnet/dynamics.hpp"
#include "pirnet/mismatch.hpp"
#include "pirnet/netsim.hpp"

namespace pirnet {

inline constexpr int kSchemaVersion = 1;

// a (AN1->LN3, LN3->LN4) weight pair of the cricket circuit
struct OperatingPoint {
    double w_an1_ln3 = 0.0;
    double w_ln3_ln4 = 0.0;
};

struct PolychronousSetup {
    int sources = 3;
    int detectors = 2;
    std::vector<std::vector<double>> delays;  // [source][detector], ms
    std::vector<double> pattern;              // source onsets that align at D1
    std::string neuron = "polychronous-detector";
    std::string delay = "polychronous";
    double v_max_target = 40.0;
    double threshold_factor = 2.25;
    double duration = 400.0;
};

struct ExperimentConfig {
    std::map<std::string, NeuronParams> neurons;
    std::map<std::string, SynapseParams> synapses;
    std::map<std::string, DelayElementConfig> delay_elements;
    std::map<std::string, OperatingPoint> operating_points;
    MismatchSpec mismatch;

    // which presets each experiment uses
    std::string characterization_preset = "delay-characterization";
    std::string delay_config_preset = "delay-config";
    std::string circuit_point = "central";

    double dt = 0.01;
    int trials = 50;
    std::uint64_t seed = 1;
    double drift_factor = 1.0;
    std::vector<double> ipi_set{0, 10, 20, 30, 40, 50};
    double target_ipi = 20.0;
    std::vector<double> noise_levels{0.0, 0.1, 0.2, 0.5};
    double noise = 0.0;         // single-level runs (detect, boundary)
    double pulse_dur = 20.0;
    int pulse_spikes = 11;
    double lag = 4.0;           // spike-count window extension past each pulse, ms
    double trial_tail = 60.0;   // simulated time after the last pulse, ms

    std::size_t population = 256;
    double characterization_duration = 200.0;

    std::vector<double> grid_w_an1_ln3;
    std::vector<double> grid_w_ln3_ln4;
    std::vector<std::uint64_t> boundary_seeds{1};

    std::vector<double> grid_w_inh;
    std::vector<double> grid_w_exc;
    double delay_sweep_duration = 600.0;

    PolychronousSetup poly;

    // detect subcommand
    double detect_ipi = 20.0;
};

void validate(const ExperimentConfig& c);

// the shipped defaults; config/default.json carries the same values
ExperimentConfig default_config();

ExperimentConfig config_from_json(const nlohmann::json& j, const ExperimentConfig& base = default_config());
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const NeuronParams& p);
nlohmann::json to_json(const SynapseParams& p);
nlohmann::json to_json(const DelayElementConfig& d);
void from_json(const nlohmann::json& j, NeuronParams& p);
void from_json(const nlohmann::json& j, SynapseParams& p);
void from_json(const nlohmann::json& j, DelayElementConfig& d);

// presets looked up by role; throw naming the missing entry
const NeuronParams& neuron_preset(const ExperimentConfig& c, const std::string& name);
const SynapseParams& synapse_preset(const ExperimentConfig& c, const std::string& name);
const DelayElementConfig& delay_preset(const ExperimentConfig& c, const std::string& name);

CircuitPresets circuit_presets(const ExperimentConfig& c, const OperatingPoint& op);
CircuitPresets circuit_presets(const ExperimentConfig& c, const std::string& point);

// multiply every time constant by f (membrane via C, synapses, adaptation)
NeuronParams drifted(const NeuronParams& p, double f);
SynapseParams drifted(const SynapseParams& p, double f);
CircuitPresets drifted(const CircuitPresets& p, double f);

}  // namespace pirnet
