#include "pirnet/delay.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pirnet/netsim.hpp"

namespace pirnet {

void validate(const DelayElementConfig& d) {
    validate(d.inh);
    validate(d.exc);
    if (d.inh.polarity != Polarity::inhibitory) throw std::invalid_argument("delay element: inh must be inhibitory");
    if (d.exc.polarity != Polarity::excitatory) throw std::invalid_argument("delay element: exc must be excitatory");
    if (d.n_stim_spikes < 1) throw std::invalid_argument("delay element: n_stim_spikes must be >= 1");
    if (!(d.stim_window >= 0)) throw std::invalid_argument("delay element: stim_window must be >= 0");
}

double summed_psc(const SynapseState& inh, const SynapseState& exc, double extra_exc) {
    return extra_exc + exc.I_out - inh.I_out;
}

namespace {

Network single_cell(const DelayElementConfig& cfg, const NeuronParams& neuron) {
    Network net;
    net.add_source("in");
    net.add_neuron("cell", neuron);
    net.add_delay_element("in", "cell", cfg);
    return net;
}

}  // namespace

Trace delay_psc(const DelayElementConfig& cfg, const SpikeTrain& stim, double duration, double dt) {
    const long steps = std::lround(duration / dt);
    SynapseState si, se;
    std::size_t c = 0;
    Trace tr;
    tr.dt = dt;
    tr.v.reserve(steps + 1);
    tr.v.push_back(0.0);
    for (long k = 0; k < steps; ++k) {
        double t = static_cast<double>(k) * dt;
        while (c < stim.times.size() && stim.times[c] <= t + kTimeEps) {
            si = dpi_receive_spike(si, cfg.inh, stim.times[c]);
            se = dpi_receive_spike(se, cfg.exc, stim.times[c]);
            ++c;
        }
        dpi_step_inplace(si, cfg.inh, t, dt);
        dpi_step_inplace(se, cfg.exc, t, dt);
        tr.v.push_back(summed_psc(si, se));
    }
    return tr;
}

Trace delay_response(const DelayElementConfig& cfg, const NeuronParams& neuron, const SpikeTrain& stim,
                     double duration, double dt) {
    validate(cfg);
    SimResult r = simulate(single_cell(cfg, neuron), {{"in", stim}}, duration, dt, {"cell"});
    return std::move(r.traces.at("cell"));
}

DelayMetrics characterize_delay(const DelayElementConfig& cfg, const NeuronParams& neuron,
                                double duration, double dt) {
    return extract_metrics(delay_response(cfg, neuron, delay_stim(cfg.n_stim_spikes, cfg.stim_window), duration, dt));
}

namespace {

struct Evaluator {
    const DelayTarget& tgt;
    const NeuronParams& neuron;
    const ConfigureOptions& opt;
    SpikeTrain stim;

    DelayMetrics run(const DelayElementConfig& c) const {
        return extract_metrics(delay_response(c, neuron, stim, opt.duration, opt.dt));
    }

    // the controlled timing quantity; invalid readings are mapped to the end
    // of the range they sit on so the monotone search still works
    double tau(const DelayMetrics& m) const {
        if (tgt.metric == DelayMetric::tau_inh) return (m.valid & kValidTauInh) ? m.tau_inh : 0.0;
        if (!(m.valid & kValidTauInh)) return 0.0;
        if (!(m.valid & kValidTauExc)) return std::numeric_limits<double>::infinity();
        return m.tau_delay;
    }
    double vmax(const DelayMetrics& m) const { return (m.valid & kValidVmax) ? m.V_max : 0.0; }

    bool ok(const DelayMetrics& m) const {
        return std::fabs(tau(m) - tgt.tau) <= tgt.tau_tol && std::fabs(vmax(m) - tgt.v_max) <= tgt.v_tol;
    }
};

// geometric bisection for an increasing f on [lo, hi]; returns the argument
template <class F>
double bisect(F f, double target, double lo, double hi, int iters, double tol) {
    double mid = std::sqrt(lo * hi);
    for (int i = 0; i < iters; ++i) {
        mid = std::sqrt(lo * hi);
        double v = f(mid);
        if (std::fabs(v - target) <= tol) break;
        if (v < target)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

[[noreturn]] void unreachable(const char* what, double target, double lo, double hi) {
    std::ostringstream os;
    os << "unreachable " << what << " target " << target << " (reachable approx [" << lo << ", " << hi << "])";
    throw UnreachableTarget(os.str());
}

}  // namespace

DelayElementConfig configure_delay(const DelayTarget& target, const DelayElementConfig& base,
                                   const NeuronParams& neuron, const ConfigureOptions& opt) {
    validate(base);
    if (!(base.inh.weight > 0) || !(base.exc.weight > 0))
        throw std::invalid_argument("configure_delay: base weights must be > 0");
    Evaluator ev{target, neuron, opt, delay_stim(base.n_stim_spikes, base.stim_window)};

    DelayElementConfig cfg = base;
    if (ev.ok(ev.run(cfg))) return cfg;

    const double span = opt.span;
    // w_inh controls timing, a common scale of both weights controls amplitude
    auto tau_at = [&](double w) {
        DelayElementConfig c = cfg;
        c.inh.weight = w;
        return ev.tau(ev.run(c));
    };
    auto vmax_at = [&](double s) {
        DelayElementConfig c = cfg;
        c.inh.weight *= s;
        c.exc.weight *= s;
        return ev.vmax(ev.run(c));
    };

    for (int round = 0; round < opt.rounds; ++round) {
        double lo = cfg.inh.weight / span, hi = cfg.inh.weight * span;
        double tlo = tau_at(lo), thi = tau_at(hi);
        if (target.tau < tlo || target.tau > thi) unreachable("timing", target.tau, tlo, thi);
        cfg.inh.weight = bisect(tau_at, target.tau, lo, hi, opt.max_iter, 0.1 * target.tau_tol);

        double vlo = vmax_at(1.0 / span), vhi = vmax_at(span);
        if (target.v_max < vlo || target.v_max > vhi) unreachable("V_max", target.v_max, vlo, vhi);
        double s = bisect(vmax_at, target.v_max, 1.0 / span, span, opt.max_iter, 0.1 * target.v_tol);
        cfg.inh.weight *= s;
        cfg.exc.weight *= s;

        if (ev.ok(ev.run(cfg))) return cfg;
    }
    std::ostringstream os;
    os << "configure_delay did not converge for tau " << target.tau << " V_max " << target.v_max;
    throw UnreachableTarget(os.str());
}

DelayElementConfig configure_delay(double target_tau_inh, double target_v_max, const DelayElementConfig& base,
                                   const NeuronParams& neuron, const ConfigureOptions& opt) {
    DelayTarget t;
    t.metric = DelayMetric::tau_inh;
    t.tau = target_tau_inh;
    t.v_max = target_v_max;
    return configure_delay(t, base, neuron, opt);
}

}  // namespace pirnet
