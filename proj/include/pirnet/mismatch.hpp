#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pirnet/delay.hpp"
#include "pirnet/metrics.hpp"
#include "pirnet/parallel.hpp"

namespace pirnet {

enum class Distribution { lognormal, truncated_normal };

// keys: neuron fields (C, g_L, Delta_T, tau_w, a, b, t_refr, I_dc, V_T)
// and synapse fields prefixed by the pair member (inh.tau, exc.weight, ...)
struct MismatchSpec {
    std::map<std::string, double> cv;
    Distribution distribution = Distribution::lognormal;
    std::uint64_t seed = 0;
};

void validate(const MismatchSpec& s);
const std::vector<std::string>& mismatch_keys();

struct Instance {
    NeuronParams neuron;
    DelayElementConfig delay;
};

// multiplicative factor for one parameter of one instance
double mismatch_factor(const MismatchSpec& spec, std::size_t instance, const std::string& name);

std::vector<Instance> sample_population(const NeuronParams& nominal_neuron, const DelayElementConfig& nominal_delay,
                                        std::size_t n, const MismatchSpec& spec);

struct Histogram {
    std::string name;
    double origin = 0.0;
    double width = 1.0;
    std::vector<int> counts;

    double left(std::size_t i) const { return origin + width * static_cast<double>(i); }
    double right(std::size_t i) const { return left(i + 1); }
    std::size_t mode_bin() const;
    int total() const;
};

// bins aligned to multiples of width, spanning the data
Histogram make_histogram(const std::string& name, const std::vector<double>& values, double width);

struct PopulationResult {
    std::vector<DelayMetrics> metrics;
    std::map<std::string, SummaryStats> summary;  // over instances where the metric is valid
    std::vector<Histogram> histograms;            // V_max, V_min, tau_inh, tau_exc, tau_delay
    std::size_t n_all_valid = 0;
    std::size_t n_no_excursion = 0;
};

struct HistogramWidths {
    double V_max = 10.0;
    double V_min = 20.0;
    double tau = 2.0;
};

PopulationResult population_characterize(const std::vector<Instance>& population, const SpikeTrain& stim,
                                         double duration, double dt, Exec exec = Exec::parallel,
                                         const HistogramWidths& widths = {});

}  // namespace pirnet
