#include "pirnet/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace pirnet {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

[[noreturn]] void diverged(const char* who, double t) {
    std::ostringstream os;
    os << "numerical divergence in " << who << " at t=" << t << " ms";
    throw NumericalDivergence(os.str(), who, t);
}

}  // namespace

void validate(const NeuronParams& p) {
    require(p.C > 0, "NeuronParams.C must be > 0");
    require(p.g_L > 0, "NeuronParams.g_L must be > 0");
    require(!p.exp_enabled || p.Delta_T > 0, "NeuronParams.Delta_T must be > 0");
    require(!p.adapt_enabled || p.tau_w > 0, "NeuronParams.tau_w must be > 0");
    require(p.V_floor < p.E_L, "NeuronParams: need V_floor < E_L");
    require(p.E_L < p.V_T, "NeuronParams: need E_L < V_T");
    require(p.V_T < p.V_peak, "NeuronParams: need V_T < V_peak");
    require(p.t_refr >= 0, "NeuronParams.t_refr must be >= 0");
}

void validate(const SynapseParams& p) {
    require(p.tau > 0, "SynapseParams.tau must be > 0");
    require(p.gain > 0, "SynapseParams.gain must be > 0");
    require(p.weight >= 0, "SynapseParams.weight must be >= 0");
    require(p.pulse_width > 0, "SynapseParams.pulse_width must be > 0");
}

NeuronState resting_state(const NeuronParams& p) {
    NeuronState s;
    s.V = std::fmin(std::fmax(p.rest(), p.V_floor), p.V_peak);
    return s;
}

bool adex_step_inplace(NeuronState& s, const NeuronParams& p, double I_syn, double t, double dt,
                       const char* who) {
    if (!std::isfinite(I_syn) || !std::isfinite(s.V) || !std::isfinite(s.w)) diverged(who, t);

    if (t < s.refr_until) {
        s.V = p.V_r;
        if (p.adapt_enabled) s.w += dt / p.tau_w * (p.a * (s.V - p.E_L) - s.w);
        return false;
    }

    double I = I_syn + p.I_dc;
    double dV = -p.g_L * (s.V - p.E_L) - s.w + I;
    if (p.exp_enabled) dV += p.g_L * p.Delta_T * std::exp((s.V - p.V_T) / p.Delta_T);
    double dw = p.adapt_enabled ? (p.a * (s.V - p.E_L) - s.w) / p.tau_w : 0.0;

    double V = s.V + dt * dV / p.C;
    s.w += dt * dw;
    if (std::isnan(V) || !std::isfinite(s.w)) diverged(who, t);

    bool spiked = false;
    if (V >= p.V_peak) {  // +inf from an exp blow-up lands here as well
        V = p.V_r;
        s.w += p.b;
        s.refr_until = t + p.t_refr;
        s.last_spike = t + dt;
        spiked = true;
    }
    if (V < p.V_floor) V = p.V_floor;
    if (V > p.V_peak) V = p.V_peak;
    s.V = V;
    return spiked;
}

StepResult adex_step(const NeuronState& s, const NeuronParams& p, double I_syn, double t, double dt) {
    StepResult r{s, false};
    r.spiked = adex_step_inplace(r.state, p, I_syn, t, dt);
    return r;
}

void dpi_step_inplace(SynapseState& s, const SynapseParams& p, double t, double dt) {
    // same edge tolerance as spike pickup, so grid times like 50*0.04 do not add a step
    double I_in = t + kTimeEps < s.drive_until ? p.weight : 0.0;
    double I = s.I_out + dt / p.tau * (p.gain * I_in - s.I_out);
    if (!std::isfinite(I)) diverged("synapse", t);
    s.I_out = I < 0 ? 0.0 : I;
}

SynapseState dpi_step(const SynapseState& s, const SynapseParams& p, double t, double dt) {
    SynapseState r = s;
    dpi_step_inplace(r, p, t, dt);
    return r;
}

SynapseState dpi_receive_spike(const SynapseState& s, const SynapseParams& p, double t) {
    SynapseState r = s;
    r.drive_until = std::fmax(r.drive_until, t + p.pulse_width);
    return r;
}

double dpi_analytic_response(const SynapseParams& p, double pulse_start, double pulse_end, double t) {
    if (t <= pulse_start) return 0.0;
    double amp = p.gain * p.weight;
    if (t <= pulse_end) return amp * (1.0 - std::exp(-(t - pulse_start) / p.tau));
    double at_end = amp * (1.0 - std::exp(-(pulse_end - pulse_start) / p.tau));
    return at_end * std::exp(-(t - pulse_end) / p.tau);
}

}  // namespace pirnet
