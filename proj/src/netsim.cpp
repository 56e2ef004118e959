#include "pirnet/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pirnet {

void Network::add_neuron(const std::string& id, const NeuronParams& p) {
    if (has_neuron(id) || has_source(id)) throw std::invalid_argument("duplicate id " + id);
    neurons.push_back({id, p});
}

void Network::add_source(const std::string& id) {
    if (has_neuron(id) || has_source(id)) throw std::invalid_argument("duplicate id " + id);
    sources.push_back(id);
}

void Network::add_synapse(const std::string& pre, const std::string& post, const SynapseParams& p) {
    synapses.push_back({pre, post, p});
}

void Network::add_delay_element(const std::string& pre, const std::string& post, const DelayElementConfig& d) {
    add_synapse(pre, post, d.inh);
    add_synapse(pre, post, d.exc);
}

std::size_t Network::remove_synapses(const std::string& pre, const std::string& post) {
    auto n0 = synapses.size();
    std::erase_if(synapses, [&](const SynapseEntry& s) { return s.pre == pre && s.post == post; });
    return n0 - synapses.size();
}

bool Network::has_neuron(const std::string& id) const {
    return std::any_of(neurons.begin(), neurons.end(), [&](auto& n) { return n.id == id; });
}

bool Network::has_source(const std::string& id) const {
    return std::find(sources.begin(), sources.end(), id) != sources.end();
}

NeuronParams& Network::neuron(const std::string& id) {
    for (auto& n : neurons)
        if (n.id == id) return n.params;
    throw std::out_of_range("no neuron " + id);
}

const NeuronParams& Network::neuron(const std::string& id) const {
    return const_cast<Network*>(this)->neuron(id);
}

std::vector<std::string> Network::validate() const {
    std::set<std::string> ids;
    for (auto& n : neurons) {
        if (!ids.insert(n.id).second) throw std::invalid_argument("duplicate id " + n.id);
        pirnet::validate(n.params);
    }
    for (auto& s : sources)
        if (!ids.insert(s).second) throw std::invalid_argument("duplicate id " + s);
    std::map<std::string, std::size_t> fan_in;
    for (auto& s : synapses) {
        if (!has_neuron(s.pre) && !has_source(s.pre))
            throw std::invalid_argument("synapse from unknown id " + s.pre);
        if (!has_neuron(s.post)) throw std::invalid_argument("synapse onto unknown neuron " + s.post);
        pirnet::validate(s.params);
        ++fan_in[s.post];
    }
    std::vector<std::string> warn;
    for (auto& [id, n] : fan_in)
        if (n > kCamFanIn) {
            std::ostringstream os;
            os << id << " has fan-in " << n << " > " << kCamFanIn;
            warn.push_back(os.str());
        }
    return warn;
}

const std::vector<double>& SimResult::spikes_of(const std::string& id) const {
    static const std::vector<double> none;
    auto it = spikes.find(id);
    return it == spikes.end() ? none : it->second;
}

namespace {

struct CompiledSyn {
    int post;
    double sign;
    SynapseParams p;
};

}  // namespace

SimResult simulate(const Network& net, const Stimuli& stimuli, double duration, double dt,
                   const std::set<std::string>& record) {
    if (!(dt > 0)) throw std::invalid_argument("simulate: dt must be > 0");
    net.validate();

    const int nn = static_cast<int>(net.neurons.size());
    const int ns = static_cast<int>(net.sources.size());
    std::map<std::string, int> index;  // neurons 0..nn-1, sources nn..
    for (int i = 0; i < nn; ++i) index[net.neurons[i].id] = i;
    for (int k = 0; k < ns; ++k) index[net.sources[k]] = nn + k;

    std::vector<std::vector<int>> out_syn(nn + ns);
    std::vector<CompiledSyn> syn;
    for (auto& s : net.synapses) {
        int pre = index.at(s.pre);
        out_syn[pre].push_back(static_cast<int>(syn.size()));
        syn.push_back({index.at(s.post), s.params.polarity == Polarity::inhibitory ? -1.0 : 1.0, s.params});
    }

    std::vector<const std::vector<double>*> ext(ns, nullptr);
    for (auto& [id, train] : stimuli) {
        if (!net.has_source(id)) throw std::invalid_argument("stimulus for unknown source " + id);
        for (double t : train.times)
            if (t < 0 || t >= duration) throw std::invalid_argument("stimulus spike outside [0, duration)");
        ext[index.at(id) - nn] = &train.times;
    }
    std::vector<std::size_t> cursor(ns, 0);

    std::vector<NeuronState> st(nn);
    std::vector<double> base(nn);
    for (int i = 0; i < nn; ++i) {
        st[i] = resting_state(net.neurons[i].params);
        base[i] = st[i].V;
    }
    std::vector<SynapseState> ss(syn.size());
    std::vector<double> I(nn);
    std::vector<double> pending(nn, -1.0);  // spike emitted last step, or -1

    const long steps = std::lround(duration / dt);
    SimResult res;
    std::vector<std::vector<double>> spikes(nn);
    std::vector<int> rec_idx;
    std::vector<Trace*> rec_tr;
    for (auto& id : record) {
        auto it = index.find(id);
        if (it == index.end() || it->second >= nn) throw std::invalid_argument("cannot record " + id);
        Trace& tr = res.traces[id];
        tr.t0 = 0.0;
        tr.dt = dt;
        tr.v.reserve(steps + 1);
        tr.v.push_back(0.0);
        rec_idx.push_back(it->second);
        rec_tr.push_back(&tr);
    }

    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        for (int q = 0; q < ns; ++q) {
            if (!ext[q]) continue;
            auto& v = *ext[q];
            while (cursor[q] < v.size() && v[cursor[q]] <= t + kTimeEps) {
                double ts = v[cursor[q]++];
                for (int e : out_syn[nn + q]) ss[e] = dpi_receive_spike(ss[e], syn[e].p, ts);
            }
        }
        for (int i = 0; i < nn; ++i) {
            if (pending[i] < 0) continue;
            for (int e : out_syn[i]) ss[e] = dpi_receive_spike(ss[e], syn[e].p, pending[i]);
            pending[i] = -1.0;
        }

        std::fill(I.begin(), I.end(), 0.0);
        for (std::size_t e = 0; e < syn.size(); ++e) {
            dpi_step_inplace(ss[e], syn[e].p, t, dt);
            I[syn[e].post] += syn[e].sign * ss[e].I_out;
        }
        for (int i = 0; i < nn; ++i) {
            if (adex_step_inplace(st[i], net.neurons[i].params, I[i], t, dt, net.neurons[i].id.c_str())) {
                double ts = *st[i].last_spike;
                spikes[i].push_back(ts);
                pending[i] = ts;
            }
        }
        for (std::size_t r = 0; r < rec_idx.size(); ++r)
            rec_tr[r]->v.push_back(st[rec_idx[r]].V - base[rec_idx[r]]);
    }

    for (int i = 0; i < nn; ++i) res.spikes[net.neurons[i].id] = std::move(spikes[i]);
    return res;
}

Network build_cricket_circuit(const CircuitPresets& p) {
    Network net;
    net.add_source("AN1");
    net.add_neuron("LN2", p.ln2);
    net.add_neuron("LN3", p.ln3);
    net.add_neuron("LN4", p.ln4);
    net.add_synapse("AN1", "LN2", p.an1_ln2);
    net.add_synapse("AN1", "LN3", p.an1_ln3);
    net.add_delay_element("LN2", "LN3", p.ln3_delay);
    net.add_synapse("LN3", "LN4", p.ln3_ln4);
    net.add_synapse("LN2", "LN4", p.ln2_ln4);
    net.validate();
    return net;
}

std::string source_name(int i) { return "S" + std::to_string(i + 1); }
std::string detector_name(int j) { return "D" + std::to_string(j + 1); }

Network build_polychronous(int sources, int detectors, const std::vector<std::vector<double>>& delays,
                           const PolychronousPresets& p) {
    if (sources < 1 || detectors < 1) throw std::invalid_argument("build_polychronous: empty network");
    if (static_cast<int>(delays.size()) != sources)
        throw std::invalid_argument("build_polychronous: delay matrix rows != sources");
    for (auto& row : delays)
        if (static_cast<int>(row.size()) != detectors)
            throw std::invalid_argument("build_polychronous: delay matrix cols != detectors");

    NeuronParams det = p.detector;
    det.V_T = det.rest() + p.threshold_factor * p.v_max_target;
    det.V_peak = det.V_T + 5.0 * det.Delta_T;
    det.V_r = det.rest();

    // subthreshold twin used for fitting the edges
    NeuronParams lin = det;
    lin.exp_enabled = false;
    lin.adapt_enabled = false;

    ConfigureOptions opt;
    opt.duration = p.duration;
    opt.dt = p.dt;

    Network net;
    for (int i = 0; i < sources; ++i) net.add_source(source_name(i));
    for (int j = 0; j < detectors; ++j) net.add_neuron(detector_name(j), det);
    std::map<double, DelayElementConfig> fitted;  // equal delays share one fit
    for (int i = 0; i < sources; ++i)
        for (int j = 0; j < detectors; ++j) {
            double d = delays[i][j];
            auto it = fitted.find(d);
            if (it == fitted.end()) {
                DelayTarget tgt;
                tgt.metric = DelayMetric::tau_delay;
                tgt.tau = d;
                tgt.v_max = p.v_max_target;
                tgt.tau_tol = 0.5;
                tgt.v_tol = 1.0;
                it = fitted.emplace(d, configure_delay(tgt, p.base, lin, opt)).first;
            }
            net.add_delay_element(source_name(i), detector_name(j), it->second);
        }
    net.validate();
    return net;
}

void write_spikes_csv(std::ostream& os, const SimResult& r) {
    auto old = os.precision(10);
    os << "neuron,time\n";
    for (auto& [id, sp] : r.spikes)
        for (double t : sp) os << id << ',' << t << '\n';
    os.precision(old);
}

void write_trace_csv(std::ostream& os, const Trace& tr) {
    auto old = os.precision(10);
    os << "time,V\n";
    for (std::size_t i = 0; i < tr.size(); ++i) os << tr.time(i) << ',' << tr.v[i] << '\n';
    os.precision(old);
}

}  // namespace pirnet
