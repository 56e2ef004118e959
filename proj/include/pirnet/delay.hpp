#pragma once

#include <stdexcept>

#include "pirnet/dynamics.hpp"
#include "pirnet/metrics.hpp"
#include "pirnet/stimgen.hpp"

namespace pirnet {

struct DelayElementConfig {
    SynapseParams inh{5.0, 1.0, 0.0, 1.0, Polarity::inhibitory};
    SynapseParams exc{10.0, 1.0, 0.0, 1.0, Polarity::excitatory};
    int n_stim_spikes = 4;
    double stim_window = 20.0;
};

void validate(const DelayElementConfig& d);

double summed_psc(const SynapseState& inh, const SynapseState& exc, double extra_exc = 0.0);

// net PSC of the pair alone, sampled like delay_response
Trace delay_psc(const DelayElementConfig& cfg, const SpikeTrain& stim, double duration, double dt);

Trace delay_response(const DelayElementConfig& cfg, const NeuronParams& neuron, const SpikeTrain& stim,
                     double duration, double dt);

// convenience: response to the element's own n-spike protocol
DelayMetrics characterize_delay(const DelayElementConfig& cfg, const NeuronParams& neuron,
                                double duration, double dt);

class UnreachableTarget : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DelayMetric { tau_inh, tau_delay };

struct DelayTarget {
    DelayMetric metric = DelayMetric::tau_inh;
    double tau = 0.0;      // ms
    double v_max = 0.0;    // mV
    double tau_tol = 5.0;
    double v_tol = 10.0;
};

struct ConfigureOptions {
    double duration = 600.0;
    double dt = 0.01;
    int max_iter = 40;   // per bisection
    int rounds = 6;
    double span = 64.0;  // search bracket factor around the starting weights
};

DelayElementConfig configure_delay(const DelayTarget& target, const DelayElementConfig& base,
                                   const NeuronParams& neuron, const ConfigureOptions& opt = {});

DelayElementConfig configure_delay(double target_tau_inh, double target_v_max,
                                   const DelayElementConfig& base, const NeuronParams& neuron,
                                   const ConfigureOptions& opt = {});

}  // namespace pirnet
