#include "pirnet/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pirnet {

using nlohmann::json;

namespace {

template <class T>
void get_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

const char* to_string(Polarity p) { return p == Polarity::inhibitory ? "inhibitory" : "excitatory"; }

Polarity polarity_from(const std::string& s) {
    if (s == "inhibitory") return Polarity::inhibitory;
    if (s == "excitatory") return Polarity::excitatory;
    throw std::invalid_argument("bad polarity " + s);
}

const char* to_string(Distribution d) { return d == Distribution::lognormal ? "lognormal" : "truncated-normal"; }

Distribution distribution_from(const std::string& s) {
    if (s == "lognormal") return Distribution::lognormal;
    if (s == "truncated-normal") return Distribution::truncated_normal;
    throw std::invalid_argument("bad distribution " + s);
}

}  // namespace

json to_json(const NeuronParams& p) {
    return json{{"C", p.C},         {"g_L", p.g_L},       {"E_L", p.E_L},         {"V_T", p.V_T},
                {"Delta_T", p.Delta_T}, {"tau_w", p.tau_w}, {"a", p.a},            {"b", p.b},
                {"V_r", p.V_r},     {"V_peak", p.V_peak}, {"t_refr", p.t_refr},   {"I_dc", p.I_dc},
                {"V_floor", p.V_floor}, {"exp_enabled", p.exp_enabled}, {"adapt_enabled", p.adapt_enabled}};
}

void from_json(const json& j, NeuronParams& p) {
    get_if(j, "C", p.C);
    get_if(j, "g_L", p.g_L);
    get_if(j, "E_L", p.E_L);
    get_if(j, "V_T", p.V_T);
    get_if(j, "Delta_T", p.Delta_T);
    get_if(j, "tau_w", p.tau_w);
    get_if(j, "a", p.a);
    get_if(j, "b", p.b);
    get_if(j, "V_r", p.V_r);
    get_if(j, "V_peak", p.V_peak);
    get_if(j, "t_refr", p.t_refr);
    get_if(j, "I_dc", p.I_dc);
    get_if(j, "V_floor", p.V_floor);
    get_if(j, "exp_enabled", p.exp_enabled);
    get_if(j, "adapt_enabled", p.adapt_enabled);
}

json to_json(const SynapseParams& p) {
    return json{{"tau", p.tau}, {"gain", p.gain}, {"weight", p.weight}, {"pulse_width", p.pulse_width},
                {"polarity", to_string(p.polarity)}};
}

void from_json(const json& j, SynapseParams& p) {
    get_if(j, "tau", p.tau);
    get_if(j, "gain", p.gain);
    get_if(j, "weight", p.weight);
    get_if(j, "pulse_width", p.pulse_width);
    if (j.contains("polarity")) p.polarity = polarity_from(j.at("polarity").get<std::string>());
}

json to_json(const DelayElementConfig& d) {
    return json{{"inh", to_json(d.inh)}, {"exc", to_json(d.exc)}, {"n_stim_spikes", d.n_stim_spikes},
                {"stim_window", d.stim_window}};
}

void from_json(const json& j, DelayElementConfig& d) {
    if (j.contains("inh")) from_json(j.at("inh"), d.inh);
    if (j.contains("exc")) from_json(j.at("exc"), d.exc);
    get_if(j, "n_stim_spikes", d.n_stim_spikes);
    get_if(j, "stim_window", d.stim_window);
    d.inh.polarity = Polarity::inhibitory;
    d.exc.polarity = Polarity::excitatory;
}

void validate(const ExperimentConfig& c) {
    auto bad = [](const std::string& m) { throw std::invalid_argument("config: " + m); };
    if (!(c.dt > 0)) bad("dt must be > 0");
    if (c.trials < 1) bad("trials must be >= 1");
    if (!(c.drift_factor > 0)) bad("drift_factor must be > 0");
    if (c.ipi_set.empty()) bad("ipi_set is empty");
    if (c.noise_levels.empty()) bad("noise_levels is empty");
    if (c.grid_w_an1_ln3.empty() || c.grid_w_ln3_ln4.empty()) bad("boundary grid is empty");
    if (c.grid_w_inh.empty() || c.grid_w_exc.empty()) bad("delay grid is empty");
    if (c.boundary_seeds.empty()) bad("boundary_seeds is empty");
    if (c.population < 1) bad("population must be >= 1");
    if (c.noise < 0 || c.noise > 1) bad("noise must be in [0,1]");
    for (double p : c.noise_levels)
        if (p < 0 || p > 1) bad("noise levels must be in [0,1]");
    bool has_target = false;
    for (double i : c.ipi_set) has_target |= (i == c.target_ipi);
    if (!has_target) bad("target_ipi not in ipi_set");
    for (auto& [n, p] : c.neurons) validate(p);
    for (auto& [n, p] : c.synapses) validate(p);
    for (auto& [n, d] : c.delay_elements) validate(d);
    validate(c.mismatch);
    if (static_cast<int>(c.poly.delays.size()) != c.poly.sources) bad("polychronous delays rows != sources");
    for (auto& r : c.poly.delays)
        if (static_cast<int>(r.size()) != c.poly.detectors) bad("polychronous delays cols != detectors");
    if (static_cast<int>(c.poly.pattern.size()) != c.poly.sources) bad("polychronous pattern size != sources");
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    for (auto& [n, p] : c.neurons) j["neurons"][n] = to_json(p);
    for (auto& [n, p] : c.synapses) j["synapses"][n] = to_json(p);
    for (auto& [n, d] : c.delay_elements) j["delay_elements"][n] = to_json(d);
    for (auto& [n, o] : c.operating_points)
        j["operating_points"][n] = {{"w_an1_ln3", o.w_an1_ln3}, {"w_ln3_ln4", o.w_ln3_ln4}};
    j["mismatch"] = {{"distribution", to_string(c.mismatch.distribution)},
                     {"seed", c.mismatch.seed},
                     {"cv", c.mismatch.cv}};
    j["experiment"] = {
        {"characterization_preset", c.characterization_preset},
        {"delay_config_preset", c.delay_config_preset},
        {"circuit_point", c.circuit_point},
        {"dt", c.dt},
        {"trials", c.trials},
        {"seed", c.seed},
        {"drift_factor", c.drift_factor},
        {"ipi_set", c.ipi_set},
        {"target_ipi", c.target_ipi},
        {"noise_levels", c.noise_levels},
        {"noise", c.noise},
        {"pulse_dur", c.pulse_dur},
        {"pulse_spikes", c.pulse_spikes},
        {"lag", c.lag},
        {"trial_tail", c.trial_tail},
        {"population", c.population},
        {"characterization_duration", c.characterization_duration},
        {"grid_w_an1_ln3", c.grid_w_an1_ln3},
        {"grid_w_ln3_ln4", c.grid_w_ln3_ln4},
        {"boundary_seeds", c.boundary_seeds},
        {"grid_w_inh", c.grid_w_inh},
        {"grid_w_exc", c.grid_w_exc},
        {"delay_sweep_duration", c.delay_sweep_duration},
        {"detect_ipi", c.detect_ipi},
    };
    j["polychronous"] = {
        {"sources", c.poly.sources},
        {"detectors", c.poly.detectors},
        {"delays", c.poly.delays},
        {"pattern", c.poly.pattern},
        {"neuron", c.poly.neuron},
        {"delay", c.poly.delay},
        {"v_max_target", c.poly.v_max_target},
        {"threshold_factor", c.poly.threshold_factor},
        {"duration", c.poly.duration},
    };
    return j;
}

ExperimentConfig config_from_json(const json& j, const ExperimentConfig& base) {
    ExperimentConfig c = base;
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("config: unsupported schema_version");
    if (j.contains("neurons"))
        for (auto& [n, v] : j.at("neurons").items()) from_json(v, c.neurons[n]);
    if (j.contains("synapses"))
        for (auto& [n, v] : j.at("synapses").items()) from_json(v, c.synapses[n]);
    if (j.contains("delay_elements"))
        for (auto& [n, v] : j.at("delay_elements").items()) from_json(v, c.delay_elements[n]);
    if (j.contains("operating_points"))
        for (auto& [n, v] : j.at("operating_points").items()) {
            get_if(v, "w_an1_ln3", c.operating_points[n].w_an1_ln3);
            get_if(v, "w_ln3_ln4", c.operating_points[n].w_ln3_ln4);
        }
    if (j.contains("mismatch")) {
        auto& m = j.at("mismatch");
        if (m.contains("distribution")) c.mismatch.distribution = distribution_from(m.at("distribution"));
        get_if(m, "seed", c.mismatch.seed);
        if (m.contains("cv")) c.mismatch.cv = m.at("cv").get<std::map<std::string, double>>();
    }
    if (j.contains("experiment")) {
        auto& e = j.at("experiment");
        get_if(e, "characterization_preset", c.characterization_preset);
        get_if(e, "delay_config_preset", c.delay_config_preset);
        get_if(e, "circuit_point", c.circuit_point);
        get_if(e, "dt", c.dt);
        get_if(e, "trials", c.trials);
        get_if(e, "seed", c.seed);
        get_if(e, "drift_factor", c.drift_factor);
        get_if(e, "ipi_set", c.ipi_set);
        get_if(e, "target_ipi", c.target_ipi);
        get_if(e, "noise_levels", c.noise_levels);
        get_if(e, "noise", c.noise);
        get_if(e, "pulse_dur", c.pulse_dur);
        get_if(e, "pulse_spikes", c.pulse_spikes);
        get_if(e, "lag", c.lag);
        get_if(e, "trial_tail", c.trial_tail);
        get_if(e, "population", c.population);
        get_if(e, "characterization_duration", c.characterization_duration);
        get_if(e, "grid_w_an1_ln3", c.grid_w_an1_ln3);
        get_if(e, "grid_w_ln3_ln4", c.grid_w_ln3_ln4);
        get_if(e, "boundary_seeds", c.boundary_seeds);
        get_if(e, "grid_w_inh", c.grid_w_inh);
        get_if(e, "grid_w_exc", c.grid_w_exc);
        get_if(e, "delay_sweep_duration", c.delay_sweep_duration);
        get_if(e, "detect_ipi", c.detect_ipi);
    }
    if (j.contains("polychronous")) {
        auto& p = j.at("polychronous");
        get_if(p, "sources", c.poly.sources);
        get_if(p, "detectors", c.poly.detectors);
        get_if(p, "delays", c.poly.delays);
        get_if(p, "pattern", c.poly.pattern);
        get_if(p, "neuron", c.poly.neuron);
        get_if(p, "delay", c.poly.delay);
        get_if(p, "v_max_target", c.poly.v_max_target);
        get_if(p, "threshold_factor", c.poly.threshold_factor);
        get_if(p, "duration", c.poly.duration);
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    // shipped presets carry // provenance comments
    json j = json::parse(in, nullptr, true, true);
    return config_from_json(j);
}

const NeuronParams& neuron_preset(const ExperimentConfig& c, const std::string& name) {
    auto it = c.neurons.find(name);
    if (it == c.neurons.end()) throw std::invalid_argument("missing neuron preset " + name);
    return it->second;
}

const SynapseParams& synapse_preset(const ExperimentConfig& c, const std::string& name) {
    auto it = c.synapses.find(name);
    if (it == c.synapses.end()) throw std::invalid_argument("missing synapse preset " + name);
    return it->second;
}

const DelayElementConfig& delay_preset(const ExperimentConfig& c, const std::string& name) {
    auto it = c.delay_elements.find(name);
    if (it == c.delay_elements.end()) throw std::invalid_argument("missing delay-element preset " + name);
    return it->second;
}

CircuitPresets circuit_presets(const ExperimentConfig& c, const OperatingPoint& op) {
    CircuitPresets p;
    p.ln2 = neuron_preset(c, "LN2");
    p.ln3 = neuron_preset(c, "LN3");
    p.ln4 = neuron_preset(c, "LN4");
    p.an1_ln2 = synapse_preset(c, "AN1-LN2");
    p.an1_ln3 = synapse_preset(c, "AN1-LN3");
    p.ln3_delay = delay_preset(c, "LN2-LN3");
    p.ln3_ln4 = synapse_preset(c, "LN3-LN4");
    p.ln2_ln4 = synapse_preset(c, "LN2-LN4");
    p.an1_ln3.weight = op.w_an1_ln3;
    p.ln3_ln4.weight = op.w_ln3_ln4;
    return p;
}

CircuitPresets circuit_presets(const ExperimentConfig& c, const std::string& point) {
    auto it = c.operating_points.find(point);
    if (it == c.operating_points.end()) throw std::invalid_argument("missing operating point " + point);
    return circuit_presets(c, it->second);
}

NeuronParams drifted(const NeuronParams& p, double f) {
    NeuronParams q = p;
    q.C *= f;
    q.tau_w *= f;
    return q;
}

SynapseParams drifted(const SynapseParams& p, double f) {
    SynapseParams q = p;
    q.tau *= f;
    return q;
}

CircuitPresets drifted(const CircuitPresets& p, double f) {
    CircuitPresets q = p;
    q.ln2 = drifted(p.ln2, f);
    q.ln3 = drifted(p.ln3, f);
    q.ln4 = drifted(p.ln4, f);
    q.an1_ln2 = drifted(p.an1_ln2, f);
    q.an1_ln3 = drifted(p.an1_ln3, f);
    q.ln3_delay.inh = drifted(p.ln3_delay.inh, f);
    q.ln3_delay.exc = drifted(p.ln3_delay.exc, f);
    q.ln3_ln4 = drifted(p.ln3_ln4, f);
    q.ln2_ln4 = drifted(p.ln2_ln4, f);
    return q;
}

}  // namespace pirnet
