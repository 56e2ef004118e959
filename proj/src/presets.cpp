#include "pirnet/config.hpp"

namespace pirnet {

namespace {

NeuronParams spiking(double C) {
    NeuronParams p;
    p.C = C;
    p.g_L = 1.0;
    p.E_L = 0.0;
    p.V_T = 160.0;
    p.Delta_T = 5.0;
    p.V_peak = p.V_T + 5.0 * p.Delta_T;
    p.V_r = 0.0;
    p.t_refr = 3.0;
    p.V_floor = -320.0;
    p.exp_enabled = true;
    return p;
}

SynapseParams syn(double tau, double w, Polarity pol) {
    SynapseParams s;
    s.tau = tau;
    s.gain = 1.0;
    s.weight = w;
    s.pulse_width = 1.0;
    s.polarity = pol;
    return s;
}

DelayElementConfig pair(double tau_inh, double w_inh, double tau_exc, double w_exc) {
    DelayElementConfig d;
    d.inh = syn(tau_inh, w_inh, Polarity::inhibitory);
    d.exc = syn(tau_exc, w_exc, Polarity::excitatory);
    return d;
}

}  // namespace

ExperimentConfig default_config() {
    ExperimentConfig c;

    // subthreshold cell for the single-element studies
    NeuronParams sub;
    sub.C = 3.0;
    sub.g_L = 1.0;
    sub.exp_enabled = false;
    sub.adapt_enabled = false;
    c.neurons["delay-characterization"] = sub;
    c.delay_elements["delay-characterization"] = pair(7.2, 3150.0, 19.8, 3100.0);

    // rest 40 mV above the floor so inhibition rails the membrane
    NeuronParams sat = sub;
    sat.C = 10.0;
    sat.I_dc = -280.0;
    c.neurons["delay-config"] = sat;
    c.delay_elements["delay-config"] = pair(15.0, 6000.0, 150.0, 4000.0);

    c.neurons["LN2"] = spiking(3.0);
    c.neurons["LN3"] = spiking(3.0);
    c.neurons["LN4"] = spiking(3.0);
    c.synapses["AN1-LN2"] = syn(2.0, 606.0, Polarity::excitatory);
    c.synapses["AN1-LN3"] = syn(2.0, 250.0, Polarity::excitatory);
    c.synapses["LN3-LN4"] = syn(2.0, 4000.0, Polarity::excitatory);
    c.synapses["LN2-LN4"] = syn(8.0, 5000.0, Polarity::inhibitory);
    c.delay_elements["LN2-LN3"] = pair(4.78, 10929.0, 8.62, 7483.0);

    c.operating_points["central"] = {250.0, 4000.0};
    c.operating_points["boundary"] = {400.0, 6000.0};

    NeuronParams det = spiking(5.0);
    det.E_L = -240.0;
    det.I_dc = -40.0;  // rest at -280
    det.V_r = -280.0;
    det.V_T = -190.0;
    det.V_peak = det.V_T + 5.0 * det.Delta_T;
    c.neurons["polychronous-detector"] = det;
    c.delay_elements["polychronous"] = pair(10.0, 4794.0, 20.0, 3077.0);

    c.mismatch.distribution = Distribution::lognormal;
    c.mismatch.seed = 256;
    c.mismatch.cv = {
        {"C", 0.04},       {"g_L", 0.03},        {"inh.tau", 0.05},
        {"exc.tau", 0.03}, {"inh.weight", 0.09}, {"exc.weight", 0.015},
    };

    for (double w = 150.0; w <= 350.0 + 1e-9; w += 25.0) c.grid_w_an1_ln3.push_back(w);
    for (double w = 1000.0; w <= 4000.0 + 1e-9; w += 500.0) c.grid_w_ln3_ln4.push_back(w);
    c.boundary_seeds = {1, 2, 3};

    c.grid_w_inh = {6000.0, 12000.0, 24000.0, 48000.0};
    c.grid_w_exc = {1500.0, 4000.0, 9000.0};

    c.poly.delays = {{75.0, 45.0}, {60.0, 60.0}, {45.0, 75.0}};
    c.poly.pattern = {0.0, 15.0, 30.0};
    return c;
}

}  // namespace pirnet
