#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pirnet/delay.hpp"
#include "pirnet/dynamics.hpp"
#include "pirnet/metrics.hpp"
#include "pirnet/stimgen.hpp"

namespace pirnet {

struct NeuronEntry {
    std::string id;
    NeuronParams params;
};

struct SynapseEntry {
    std::string pre;   // neuron or source id
    std::string post;  // neuron id
    SynapseParams params;
};

// hardware CAM fan-in; exceeding it only produces a warning
inline constexpr std::size_t kCamFanIn = 64;

struct Network {
    std::vector<NeuronEntry> neurons;
    std::vector<SynapseEntry> synapses;
    std::vector<std::string> sources;

    void add_neuron(const std::string& id, const NeuronParams& p);
    void add_source(const std::string& id);
    void add_synapse(const std::string& pre, const std::string& post, const SynapseParams& p);
    void add_delay_element(const std::string& pre, const std::string& post, const DelayElementConfig& d);
    std::size_t remove_synapses(const std::string& pre, const std::string& post);

    bool has_neuron(const std::string& id) const;
    bool has_source(const std::string& id) const;
    NeuronParams& neuron(const std::string& id);
    const NeuronParams& neuron(const std::string& id) const;

    // throws on broken structure; returns soft warnings
    std::vector<std::string> validate() const;
};

struct SimResult {
    std::map<std::string, std::vector<double>> spikes;
    std::map<std::string, Trace> traces;  // baseline-relative

    const std::vector<double>& spikes_of(const std::string& id) const;
};

using Stimuli = std::map<std::string, SpikeTrain>;

SimResult simulate(const Network& net, const Stimuli& stimuli, double duration, double dt,
                   const std::set<std::string>& record = {});

struct CircuitPresets {
    NeuronParams ln2, ln3, ln4;
    SynapseParams an1_ln2;   // fast exc
    SynapseParams an1_ln3;   // fast exc
    DelayElementConfig ln3_delay;  // LN2 -> LN3
    SynapseParams ln3_ln4;   // fast exc
    SynapseParams ln2_ln4;   // subtractive inh
};

Network build_cricket_circuit(const CircuitPresets& p);

struct PolychronousPresets {
    NeuronParams detector;
    DelayElementConfig base;
    double v_max_target = 40.0;     // rebound amplitude of each edge, mV
    double threshold_factor = 2.25; // detector threshold above rest, in units of v_max_target
    double duration = 400.0;
    double dt = 0.01;
};

// delays[i][j]: onset-to-onset delay from source i to detector j
Network build_polychronous(int sources, int detectors, const std::vector<std::vector<double>>& delays,
                           const PolychronousPresets& p);

std::string source_name(int i);
std::string detector_name(int j);

void write_spikes_csv(std::ostream& os, const SimResult& r);
// one neuron per file: time,V
void write_trace_csv(std::ostream& os, const Trace& tr);

}  // namespace pirnet
