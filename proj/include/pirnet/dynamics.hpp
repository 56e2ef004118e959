#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pirnet {

// Units: ms, mV, pA, nS, pF.

// tolerance when comparing a step time against an event time
inline constexpr double kTimeEps = 1e-9;

struct NeuronParams {
    double C = 10.0;        // pF
    double g_L = 1.0;       // nS
    double E_L = 0.0;       // mV
    double V_T = 160.0;     // mV
    double Delta_T = 5.0;   // mV
    double tau_w = 100.0;   // ms
    double a = 0.0;         // nS
    double b = 0.0;         // pA
    double V_r = 0.0;       // mV
    double V_peak = 185.0;  // mV
    double t_refr = 3.0;    // ms
    double I_dc = 0.0;      // pA
    double V_floor = -320.0;
    bool exp_enabled = false;
    bool adapt_enabled = false;

    double tau_m() const { return C / g_L; }
    // resting potential of the linear part
    double rest() const { return E_L + I_dc / g_L; }
};

struct NeuronState {
    double V = 0.0;
    double w = 0.0;
    double refr_until = -1e300;
    std::optional<double> last_spike;
};

enum class Polarity { excitatory, inhibitory };

struct SynapseParams {
    double tau = 5.0;
    double gain = 1.0;
    double weight = 0.0;       // pA
    double pulse_width = 1.0;  // ms
    Polarity polarity = Polarity::excitatory;
};

struct SynapseState {
    double I_out = 0.0;
    double drive_until = -1e300;
};

class NumericalDivergence : public std::runtime_error {
public:
    NumericalDivergence(const std::string& what, std::string who, double t)
        : std::runtime_error(what), who_(std::move(who)), t_(t) {}
    const std::string& who() const { return who_; }
    double time() const { return t_; }

private:
    std::string who_;
    double t_;
};

// throws std::invalid_argument naming the broken field
void validate(const NeuronParams& p);
void validate(const SynapseParams& p);

NeuronState resting_state(const NeuronParams& p);

struct StepResult {
    NeuronState state;
    bool spiked = false;
};

StepResult adex_step(const NeuronState& s, const NeuronParams& p, double I_syn, double t, double dt);

// in-place form used by the network engine; `who` is only used for error reporting
bool adex_step_inplace(NeuronState& s, const NeuronParams& p, double I_syn, double t, double dt,
                       const char* who = "neuron");

SynapseState dpi_step(const SynapseState& s, const SynapseParams& p, double t, double dt);
void dpi_step_inplace(SynapseState& s, const SynapseParams& p, double t, double dt);

SynapseState dpi_receive_spike(const SynapseState& s, const SynapseParams& p, double t);

// closed form for a single rectangular input pulse
double dpi_analytic_response(const SynapseParams& p, double pulse_start, double pulse_end, double t);

}  // namespace pirnet
