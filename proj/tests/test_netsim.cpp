#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "pirnet/config.hpp"
#include "pirnet/experiments.hpp"
#include "pirnet/netsim.hpp"

using namespace pirnet;

namespace {

const ExperimentConfig& cfg() {
    static const ExperimentConfig c = default_config();
    return c;
}

Network central() { return build_cricket_circuit(circuit_presets(cfg(), "central")); }

SpikeTrain dp(double ipi) {
    PulseSpec p;
    p.ipi = ipi;
    return double_pulse(p);
}

}  // namespace

TEST_CASE("cricket topology") {
    Network net = central();
    CHECK(net.neurons.size() == 3);
    CHECK(net.sources.size() == 1);
    CHECK(net.synapses.size() == 6);
    CHECK(net.validate().empty());

    Network other = build_cricket_circuit(circuit_presets(cfg(), OperatingPoint{777.0, 4000.0}));
    REQUIRE(other.synapses.size() == net.synapses.size());
    int differing = 0;
    for (std::size_t i = 0; i < net.synapses.size(); ++i) {
        CHECK(net.synapses[i].pre == other.synapses[i].pre);
        CHECK(net.synapses[i].post == other.synapses[i].post);
        if (to_json(net.synapses[i].params) != to_json(other.synapses[i].params)) {
            ++differing;
            CHECK(net.synapses[i].pre == "AN1");
            CHECK(net.synapses[i].post == "LN3");
        }
    }
    CHECK(differing == 1);
}

TEST_CASE("quiescent without input") {
    SimResult r = simulate(central(), {}, 200, 0.01);
    for (auto& [id, sp] : r.spikes) CHECK(sp.empty());
}

TEST_CASE("single pulse: LN2 bursts, LN3 dips and rebounds, LN4 silent") {
    SimResult r = simulate(central(), {{"AN1", pulse({})}}, 120, 0.01, {"LN3"});
    auto n2 = r.spikes_of("LN2").size();
    CHECK(n2 >= 4);
    CHECK(n2 <= 5);
    CHECK(r.spikes_of("LN4").empty());
    DelayMetrics m = extract_metrics(r.traces.at("LN3"));
    CHECK(m.V_min < -10);
    CHECK(m.V_max > 10);
    CHECK(m.exc_onset > 20);  // rebound after the pulse
}

TEST_CASE("double pulse at 20 ms IPI: LN3 fires in the second pulse, LN4 responds") {
    SimResult r = simulate(central(), {{"AN1", dp(20)}}, 120, 0.01);
    CHECK(count_spikes(r.spikes_of("LN3"), 40, 64) >= 1);
    CHECK(r.spikes_of("LN4").size() >= 1);
}

TEST_CASE("without the delay element LN4 never fires") {
    Network net = central();
    CHECK(net.remove_synapses("LN2", "LN3") == 2);
    for (double ipi : cfg().ipi_set) {
        SimResult r = simulate(net, {{"AN1", dp(ipi)}}, trial_duration(cfg(), ipi), 0.01);
        CAPTURE(ipi);
        CHECK(r.spikes_of("LN4").empty());
    }
}

TEST_CASE("refractory spacing and strict ordering") {
    SimResult r = simulate(central(), {{"AN1", dp(0)}}, 120, 0.01);
    for (auto& [id, sp] : r.spikes) {
        double trefr = central().neuron(id).t_refr;
        for (std::size_t i = 1; i < sp.size(); ++i) {
            CHECK(sp[i] > sp[i - 1]);
            CHECK(sp[i] - sp[i - 1] >= trefr - 1e-9);
        }
    }
}

TEST_CASE("one-step latency between a spike and its postsynaptic effect") {
    NeuronParams pre;
    pre.C = 1.0;
    pre.exp_enabled = true;
    NeuronParams post;
    post.C = 5.0;
    Network net;
    net.add_source("in");
    net.add_neuron("A", pre);
    net.add_neuron("B", post);
    SynapseParams drive;
    drive.tau = 0.5;
    drive.weight = 5000;
    drive.pulse_width = 5;
    net.add_synapse("in", "A", drive);
    SynapseParams s;
    s.weight = 100;
    net.add_synapse("A", "B", s);
    const double dt = 0.01;
    SimResult r = simulate(net, {{"in", SpikeTrain{{1.0}}}}, 30, dt, {"B"});
    REQUIRE(!r.spikes_of("A").empty());
    long k = std::lround(r.spikes_of("A").front() / dt);  // emitted during step k-1
    const Trace& b = r.traces.at("B");
    CHECK(b.v[k - 1] == 0.0);
    CHECK(b.v[k] == 0.0);      // sample after the emitting step
    CHECK(b.v[k + 1] > 0.0);   // PSC picks it up in step k
}

TEST_CASE("bit-identical reruns") {
    PulseSpec p;
    p.ipi = 10;
    p.noise_frac = 0.5;
    p.seed = 42;
    Stimuli st{{"AN1", double_pulse(p)}};
    SimResult a = simulate(central(), st, 120, 0.01, {"LN2", "LN3", "LN4"});
    SimResult b = simulate(central(), st, 120, 0.01, {"LN2", "LN3", "LN4"});
    CHECK(a.spikes == b.spikes);
    for (auto& [id, tr] : a.traces) CHECK(tr.v == b.traces.at(id).v);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(simulate(central(), {{"AN7", pulse({})}}, 50, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(simulate(central(), {{"AN1", SpikeTrain{{60.0}}}}, 50, 0.01), std::invalid_argument);
    Network net = central();
    net.add_synapse("ghost", "LN2", SynapseParams{});
    CHECK_THROWS(net.validate());
    CHECK_THROWS(central().add_neuron("LN2", NeuronParams{}));
}

TEST_CASE("fan-in beyond the CAM size only warns") {
    Network net;
    net.add_neuron("n", NeuronParams{});
    for (int i = 0; i < 70; ++i) {
        net.add_source("s" + std::to_string(i));
        net.add_synapse("s" + std::to_string(i), "n", SynapseParams{});
    }
    auto w = net.validate();
    CHECK(w.size() == 1);
    CHECK_NOTHROW(simulate(net, {}, 1, 0.01));
}

TEST_CASE("LN4 counts agree between dt 0.01 and 0.005") {
    Network net = central();
    for (double ipi : cfg().ipi_set)
        for (double noise : {0.0, 0.2}) {
            std::uint64_t seed = trial_seed(5, 0, 0);
            auto a = run_trial(net, cfg(), ipi, noise, seed, 0.01);
            auto b = run_trial(net, cfg(), ipi, noise, seed, 0.005);
            CAPTURE(ipi);
            CHECK(a.ln4 == b.ln4);
        }
}

TEST_CASE("polychronous detectors") {
    auto res = polychronous_demo(cfg());
    REQUIRE(res.patterns.size() == 3);
    CHECK(res.patterns[0].detector_spikes[0] >= 1);
    CHECK(res.patterns[0].detector_spikes[1] == 0);
    CHECK(res.patterns[1].detector_spikes[0] == 0);
    CHECK(res.patterns[1].detector_spikes[1] >= 1);
    CHECK(res.patterns[2].detector_spikes == std::vector<int>{0, 0});
    CHECK(res.net.synapses.size() == 12);
}

TEST_CASE("polychronous builder rejects bad input") {
    PolychronousPresets p;
    p.detector = neuron_preset(cfg(), "polychronous-detector");
    p.base = delay_preset(cfg(), "polychronous");
    CHECK_THROWS(build_polychronous(2, 2, {{60, 60}}, p));
    CHECK_THROWS_AS(build_polychronous(1, 1, {{5000}}, p), UnreachableTarget);
}

TEST_CASE("csv export") {
    SimResult r = simulate(central(), {{"AN1", pulse({})}}, 40, 0.01, {"LN2"});
    std::ostringstream s, t;
    write_spikes_csv(s, r);
    CHECK(s.str().rfind("neuron,time\nLN2,", 0) == 0);
    write_trace_csv(t, r.traces.at("LN2"));
    CHECK(t.str().rfind("time,V\n0,0\n", 0) == 0);
}
