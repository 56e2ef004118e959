#include "pirnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pirnet {

Trace baseline_subtract(const Trace& tr, double pre_window) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < tr.size() && tr.time(i) < tr.t0 + pre_window; ++i) {
        sum += tr.v[i];
        ++n;
    }
    if (n == 0) throw std::invalid_argument("baseline_subtract: empty pre-stimulus window");
    double mean = sum / static_cast<double>(n);
    Trace out = tr;
    for (auto& x : out.v) x -= mean;
    return out;
}

namespace {

// where the segment i-1 -> i crosses level
double cross(const Trace& tr, std::size_t i, double level) {
    double a = tr.v[i - 1], b = tr.v[i];
    double f = (b == a) ? 0.0 : (level - a) / (b - a);
    return tr.time(i - 1) + f * tr.dt;
}

struct Span {
    double on = 0.0, off = 0.0;
    bool closed = false;
};

// contiguous region around `at` where inside(v) holds
template <class Inside>
Span region(const Trace& tr, std::size_t at, double level, Inside inside) {
    Span s;
    bool left_closed = false, right_closed = false;
    std::size_t i = at;
    while (i > 0 && inside(tr.v[i - 1])) --i;
    if (i > 0) {
        s.on = cross(tr, i, level);
        left_closed = true;
    } else {
        s.on = tr.time(0);
    }
    std::size_t j = at;
    while (j + 1 < tr.size() && inside(tr.v[j + 1])) ++j;
    if (j + 1 < tr.size()) {
        s.off = cross(tr, j + 1, level);
        right_closed = true;
    } else {
        s.off = tr.time(tr.size() - 1);
    }
    s.closed = left_closed && right_closed;
    return s;
}

}  // namespace

DelayMetrics extract_metrics(const Trace& tr) {
    DelayMetrics m;
    if (tr.size() < 2) return m;

    auto imin = static_cast<std::size_t>(std::min_element(tr.v.begin(), tr.v.end()) - tr.v.begin());
    auto imax = static_cast<std::size_t>(std::max_element(tr.v.begin() + imin, tr.v.end()) - tr.v.begin());
    m.V_min = tr.v[imin];
    m.V_max = tr.v[imax];

    if (m.V_min <= -kSignificanceFloor) {
        m.valid |= kValidVmin;
        double half = 0.5 * m.V_min;
        Span s = region(tr, imin, half, [half](double v) { return v <= half; });
        m.inh_onset = s.on;
        m.inh_offset = s.off;
        m.tau_inh = s.off - s.on;
        if (s.closed) m.valid |= kValidTauInh;
    }
    if (m.V_max >= kSignificanceFloor) {
        m.valid |= kValidVmax;
        double half = 0.5 * m.V_max;
        Span s = region(tr, imax, half, [half](double v) { return v >= half; });
        m.exc_onset = s.on;
        m.exc_offset = s.off;
        m.tau_exc = s.off - s.on;
        if (s.closed) m.valid |= kValidTauExc;
    }
    if ((m.valid & kValidTauInh) && (m.valid & kValidTauExc)) {
        m.tau_delay = m.exc_onset - m.inh_onset;
        m.tau_delay_alt = m.exc_offset - m.inh_onset;
        m.valid |= kValidTauDelay;
    }
    return m;
}

int count_spikes(const std::vector<double>& spikes, double lo, double hi) {
    int n = 0;
    for (double t : spikes)
        if (t >= lo && t < hi) ++n;
    return n;
}

ClassificationOutcome classify(const std::vector<IpiCount>& counts, double target_ipi) {
    ClassificationOutcome out;
    out.counts = counts;
    bool seen = false;
    for (const auto& c : counts) {
        if (c.ipi == target_ipi) {
            seen = true;
            if (c.ln4 < 1) out.false_negative = true;
        } else if (c.ln4 >= 1) {
            out.false_positive = true;
        }
    }
    if (!seen) throw std::invalid_argument("classify: target IPI missing from counts");
    if (out.false_positive)
        out.verdict = Verdict::false_positive;
    else if (out.false_negative)
        out.verdict = Verdict::false_negative;
    return out;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::correct: return "correct";
        case Verdict::false_positive: return "false-positive";
        case Verdict::false_negative: return "false-negative";
    }
    return "?";
}

SummaryStats summarize(const std::vector<double>& x) {
    SummaryStats s;
    s.n = x.size();
    if (x.empty()) return s;
    double sum = 0.0;
    for (double v : x) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double v : x) ss += (v - s.mean) * (v - s.mean);
    s.sd = s.n > 1 ? std::sqrt(ss / static_cast<double>(s.n - 1)) : 0.0;
    auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

}  // namespace pirnet
