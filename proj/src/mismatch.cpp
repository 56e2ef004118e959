#include "pirnet/mismatch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "pirnet/rng.hpp"

namespace pirnet {

namespace {

using NeuronField = double NeuronParams::*;
using SynField = double SynapseParams::*;

const std::map<std::string, NeuronField>& neuron_fields() {
    static const std::map<std::string, NeuronField> m = {
        {"C", &NeuronParams::C},         {"g_L", &NeuronParams::g_L}, {"Delta_T", &NeuronParams::Delta_T},
        {"tau_w", &NeuronParams::tau_w}, {"a", &NeuronParams::a},     {"b", &NeuronParams::b},
        {"t_refr", &NeuronParams::t_refr}, {"I_dc", &NeuronParams::I_dc},
    };
    return m;
}

const std::map<std::string, SynField>& syn_fields() {
    static const std::map<std::string, SynField> m = {
        {"tau", &SynapseParams::tau},
        {"gain", &SynapseParams::gain},
        {"weight", &SynapseParams::weight},
        {"pulse_width", &SynapseParams::pulse_width},
    };
    return m;
}

double draw_factor(Distribution d, double cv, std::uint64_t seed, std::size_t i, const std::string& name) {
    if (cv == 0.0) return 1.0;
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(stream_seed({seed, static_cast<std::uint64_t>(i), fnv1a(name), attempt}));
        std::normal_distribution<double> g(0.0, 1.0);
        double z = g(rng);
        if (d == Distribution::lognormal) {
            double s2 = std::log1p(cv * cv);
            return std::exp(std::sqrt(s2) * z - 0.5 * s2);  // mean-preserving
        }
        double f = 1.0 + cv * z;
        if (std::fabs(z) <= 3.0 && f > 0.0) return f;
    }
}

}  // namespace

const std::vector<std::string>& mismatch_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (auto& [n, f] : neuron_fields()) k.push_back(n);
        k.push_back("V_T");
        for (auto& [n, f] : syn_fields()) {
            k.push_back("inh." + n);
            k.push_back("exc." + n);
        }
        std::sort(k.begin(), k.end());
        return k;
    }();
    return keys;
}

void validate(const MismatchSpec& s) {
    const auto& keys = mismatch_keys();
    for (auto& [k, cv] : s.cv) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw std::invalid_argument("unknown mismatch parameter " + k);
        if (!(cv >= 0)) throw std::invalid_argument("mismatch CV must be >= 0 for " + k);
    }
}

double mismatch_factor(const MismatchSpec& spec, std::size_t instance, const std::string& name) {
    auto it = spec.cv.find(name);
    double cv = it == spec.cv.end() ? 0.0 : it->second;
    return draw_factor(spec.distribution, cv, spec.seed, instance, name);
}

std::vector<Instance> sample_population(const NeuronParams& nominal_neuron, const DelayElementConfig& nominal_delay,
                                        std::size_t n, const MismatchSpec& spec) {
    if (n < 1) throw std::invalid_argument("sample_population: n must be >= 1");
    validate(spec);
    std::vector<Instance> pop(n, Instance{nominal_neuron, nominal_delay});
    for (std::size_t i = 0; i < n; ++i) {
        Instance& x = pop[i];
        for (auto& [name, field] : neuron_fields()) x.neuron.*field *= mismatch_factor(spec, i, name);
        // threshold varies as a distance from the leak reversal
        double gap = x.neuron.V_peak - x.neuron.V_T;
        x.neuron.V_T = x.neuron.E_L + (x.neuron.V_T - x.neuron.E_L) * mismatch_factor(spec, i, "V_T");
        x.neuron.V_peak = x.neuron.V_T + gap;
        for (auto& [name, field] : syn_fields()) {
            x.delay.inh.*field *= mismatch_factor(spec, i, "inh." + name);
            x.delay.exc.*field *= mismatch_factor(spec, i, "exc." + name);
        }
        validate(x.neuron);
        validate(x.delay);
    }
    return pop;
}

std::size_t Histogram::mode_bin() const {
    return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

int Histogram::total() const {
    int t = 0;
    for (int c : counts) t += c;
    return t;
}

Histogram make_histogram(const std::string& name, const std::vector<double>& values, double width) {
    Histogram h;
    h.name = name;
    h.width = width;
    if (values.empty()) return h;
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    long b0 = static_cast<long>(std::floor(*lo / width));
    long b1 = static_cast<long>(std::floor(*hi / width));
    h.origin = static_cast<double>(b0) * width;
    h.counts.assign(static_cast<std::size_t>(b1 - b0 + 1), 0);
    for (double v : values) ++h.counts[static_cast<std::size_t>(static_cast<long>(std::floor(v / width)) - b0)];
    return h;
}

PopulationResult population_characterize(const std::vector<Instance>& population, const SpikeTrain& stim,
                                         double duration, double dt, Exec exec, const HistogramWidths& widths) {
    if (population.empty()) throw std::invalid_argument("population_characterize: empty population");
    PopulationResult r;
    r.metrics.resize(population.size());
    for_each_index(population.size(), exec, [&](std::size_t i) {
        const Instance& x = population[i];
        r.metrics[i] = extract_metrics(delay_response(x.delay, x.neuron, stim, duration, dt));
    });

    struct Col {
        const char* name;
        unsigned bit;
        double DelayMetrics::*field;
        double width;
    };
    const Col cols[] = {
        {"V_max", kValidVmax, &DelayMetrics::V_max, widths.V_max},
        {"V_min", kValidVmin, &DelayMetrics::V_min, widths.V_min},
        {"tau_inh", kValidTauInh, &DelayMetrics::tau_inh, widths.tau},
        {"tau_exc", kValidTauExc, &DelayMetrics::tau_exc, widths.tau},
        {"tau_delay", kValidTauDelay, &DelayMetrics::tau_delay, widths.tau},
    };
    for (const Col& c : cols) {
        std::vector<double> v;
        for (auto& m : r.metrics)
            if (m.valid & c.bit) v.push_back(m.*c.field);
        r.summary[c.name] = summarize(v);
        r.histograms.push_back(make_histogram(c.name, v, c.width));
    }
    for (auto& m : r.metrics) {
        if (m.all_valid()) ++r.n_all_valid;
        if (m.no_excursion()) ++r.n_no_excursion;
    }
    return r;
}

}  // namespace pirnet
