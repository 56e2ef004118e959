#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pirnet {

struct SpikeTrain {
    std::vector<double> times;  // ms, strictly increasing

    bool empty() const { return times.empty(); }
    std::size_t size() const { return times.size(); }
};

struct PulseSpec {
    double pulse_dur = 20.0;
    int n_spikes = 11;
    double ipi = 0.0;
    double noise_frac = 0.0;
    std::uint64_t seed = 0;
};

// smallest ISI a noisy draw may collapse to
inline constexpr double kMinIsi = 0.01;

void validate(const PulseSpec& s);

SpikeTrain pulse(const PulseSpec& spec);
SpikeTrain double_pulse(const PulseSpec& spec);
SpikeTrain delay_stim(int n = 4, double window = 20.0);

SpikeTrain shifted(const SpikeTrain& s, double offset);

void write_spike_train(std::ostream& os, const SpikeTrain& s);
SpikeTrain read_spike_train(std::istream& is);

}  // namespace pirnet
