#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pirnet {

// uniformly sampled membrane trace, sample i at t0 + i*dt
struct Trace {
    double t0 = 0.0;
    double dt = 0.01;
    std::vector<double> v;

    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    std::size_t size() const { return v.size(); }
};

// excursions smaller than this are not counted
inline constexpr double kSignificanceFloor = 1.0;  // mV

enum MetricBit : unsigned {
    kValidVmin = 1u,
    kValidVmax = 2u,
    kValidTauInh = 4u,
    kValidTauExc = 8u,
    kValidTauDelay = 16u,
    kValidAll = 31u,
};

struct DelayMetrics {
    double V_min = 0.0;
    double V_max = 0.0;
    double tau_inh = 0.0;
    double tau_exc = 0.0;
    double tau_delay = 0.0;
    // onset of inhibition to offset of excitation
    double tau_delay_alt = 0.0;
    double inh_onset = 0.0, inh_offset = 0.0;
    double exc_onset = 0.0, exc_offset = 0.0;
    unsigned valid = 0;

    bool all_valid() const { return valid == kValidAll; }
    bool no_excursion() const { return valid == 0; }
};

Trace baseline_subtract(const Trace& tr, double pre_window);

DelayMetrics extract_metrics(const Trace& tr);

// spikes inside [lo, hi)
int count_spikes(const std::vector<double>& spikes, double lo, double hi);

struct IpiCount {
    double ipi = 0.0;
    int ln3 = 0;
    int ln4 = 0;
};

enum class Verdict { correct, false_positive, false_negative };

struct ClassificationOutcome {
    std::vector<IpiCount> counts;
    Verdict verdict = Verdict::correct;
    bool false_positive = false;
    bool false_negative = false;
};

ClassificationOutcome classify(const std::vector<IpiCount>& counts, double target_ipi);

const char* to_string(Verdict v);

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation
    double min = 0.0;
    double max = 0.0;
};

SummaryStats summarize(const std::vector<double>& x);

}  // namespace pirnet
