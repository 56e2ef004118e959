#include "pirnet/stimgen.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pirnet/rng.hpp"

namespace pirnet {

void validate(const PulseSpec& s) {
    if (s.n_spikes < 2) throw std::invalid_argument("PulseSpec.n_spikes must be >= 2");
    if (!(s.pulse_dur > 0)) throw std::invalid_argument("PulseSpec.pulse_dur must be > 0");
    if (s.ipi < 0) throw std::invalid_argument("PulseSpec.ipi must be >= 0");
    if (s.noise_frac < 0 || s.noise_frac > 1)
        throw std::invalid_argument("PulseSpec.noise_frac must be in [0,1]");
}

namespace {

// n spikes starting at t0 with nominal spacing isi, each interval jittered independently
void append_train(std::vector<double>& out, double t0, int n, double isi, double p, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double t = t0;
    out.push_back(t);
    for (int i = 1; i < n; ++i) {
        double d = isi;
        if (p > 0) d += p * isi * u(rng);
        t += std::max(d, kMinIsi);
        out.push_back(t);
    }
}

void enforce_order(std::vector<double>& t) {
    std::sort(t.begin(), t.end());
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] < t[i - 1] + kMinIsi) t[i] = t[i - 1] + kMinIsi;
}

}  // namespace

SpikeTrain pulse(const PulseSpec& spec) {
    validate(spec);
    Rng rng(stream_seed({spec.seed, 1}));
    SpikeTrain s;
    double isi = spec.pulse_dur / (spec.n_spikes - 1);
    append_train(s.times, 0.0, spec.n_spikes, isi, spec.noise_frac, rng);
    return s;
}

SpikeTrain double_pulse(const PulseSpec& spec) {
    validate(spec);
    Rng rng(stream_seed({spec.seed, 2}));
    SpikeTrain s;
    double isi = spec.pulse_dur / (spec.n_spikes - 1);
    if (spec.ipi == 0.0) {
        // one continuous train, shared boundary spike counted once
        append_train(s.times, 0.0, 2 * spec.n_spikes - 1, isi, spec.noise_frac, rng);
        return s;
    }
    append_train(s.times, 0.0, spec.n_spikes, isi, spec.noise_frac, rng);
    append_train(s.times, spec.pulse_dur + spec.ipi, spec.n_spikes, isi, spec.noise_frac, rng);
    enforce_order(s.times);  // heavy noise can push the first pulse into the second
    return s;
}

SpikeTrain delay_stim(int n, double window) {
    if (n < 1) throw std::invalid_argument("delay_stim needs n >= 1");
    SpikeTrain s;
    if (n == 1) {
        s.times.push_back(0.0);
        return s;
    }
    for (int i = 0; i < n; ++i) s.times.push_back(window * i / (n - 1));
    return s;
}

SpikeTrain shifted(const SpikeTrain& s, double offset) {
    SpikeTrain r = s;
    for (auto& t : r.times) t += offset;
    return r;
}

void write_spike_train(std::ostream& os, const SpikeTrain& s) {
    auto old = os.precision(17);
    for (double t : s.times) os << t << '\n';
    os.precision(old);
}

SpikeTrain read_spike_train(std::istream& is) {
    SpikeTrain s;
    std::string line;
    while (std::getline(is, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        double t = std::stod(line.substr(b));
        if (t < 0 || (!s.times.empty() && t <= s.times.back()))
            throw std::invalid_argument("spike train must be non-negative and strictly increasing");
        s.times.push_back(t);
    }
    return s;
}

}  // namespace pirnet
