#include "pirnet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pirnet/rng.hpp"

namespace pirnet {

using nlohmann::json;

std::uint64_t trial_seed(std::uint64_t seed, int trial, int ipi_index) {
    return stream_seed({seed, fnv1a("trial"), static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(ipi_index)});
}

SpikeTrain trial_stimulus(const ExperimentConfig& cfg, double ipi, double noise, std::uint64_t seed) {
    PulseSpec s;
    s.pulse_dur = cfg.pulse_dur;
    s.n_spikes = cfg.pulse_spikes;
    s.ipi = ipi;
    s.noise_frac = noise;
    s.seed = seed;
    return double_pulse(s);
}

double trial_duration(const ExperimentConfig& cfg, double ipi) { return 2.0 * cfg.pulse_dur + ipi + cfg.trial_tail; }

TrialCounts run_trial(const Network& net, const ExperimentConfig& cfg, double ipi, double noise,
                      std::uint64_t seed, double dt) {
    SpikeTrain stim = trial_stimulus(cfg, ipi, noise, seed);
    SimResult r = simulate(net, {{"AN1", stim}}, trial_duration(cfg, ipi), dt);
    TrialCounts c;
    c.ipi = ipi;
    const double second = cfg.pulse_dur + ipi;
    const auto& ln2 = r.spikes_of("LN2");
    c.ln2_first = count_spikes(ln2, 0.0, std::min(cfg.pulse_dur + cfg.lag, second));
    c.ln2_second = count_spikes(ln2, second, second + cfg.pulse_dur + cfg.lag);
    c.ln3 = static_cast<int>(r.spikes_of("LN3").size());
    c.ln4 = static_cast<int>(r.spikes_of("LN4").size());
    return c;
}

// ---------------------------------------------------------------- characterization

std::vector<Instance> characterization_population(const ExperimentConfig& cfg) {
    return sample_population(neuron_preset(cfg, cfg.characterization_preset),
                             delay_preset(cfg, cfg.characterization_preset), cfg.population, cfg.mismatch);
}

PopulationResult characterize_population(const ExperimentConfig& cfg, Exec exec) {
    const DelayElementConfig& d = delay_preset(cfg, cfg.characterization_preset);
    return population_characterize(characterization_population(cfg), delay_stim(d.n_stim_spikes, d.stim_window),
                                   cfg.characterization_duration, cfg.dt, exec);
}

namespace {

json provenance(std::uint64_t seed, double dt) { return json{{"seed", seed}, {"dt", dt}}; }

json stats_json(const SummaryStats& s) {
    return json{{"n", s.n}, {"mean", s.mean}, {"sd", s.sd}, {"min", s.min}, {"max", s.max}};
}

}  // namespace

Report run_characterization(const ExperimentConfig& cfg, Exec exec) {
    PopulationResult pop = characterize_population(cfg, exec);
    Report r;
    r.experiment = "characterize";
    r.config = config_to_json(cfg);
    json prov = provenance(cfg.mismatch.seed, cfg.dt);

    Table m{"metrics", {"instance_id", "V_min", "V_max", "tau_inh", "tau_exc", "tau_delay", "valid_mask"}, {}, prov};
    for (std::size_t i = 0; i < pop.metrics.size(); ++i) {
        const auto& x = pop.metrics[i];
        m.add({i, x.V_min, x.V_max, x.tau_inh, x.tau_exc, x.tau_delay, x.valid});
    }
    r.tables.push_back(std::move(m));

    Table alt{"tau_delay_alt", {"instance_id", "tau_delay_alt"}, {}, prov};
    for (std::size_t i = 0; i < pop.metrics.size(); ++i)
        if (pop.metrics[i].valid & kValidTauDelay) alt.add({i, pop.metrics[i].tau_delay_alt});
    r.tables.push_back(std::move(alt));

    for (const auto& h : pop.histograms) {
        Table t{"hist_" + h.name, {"bin_left", "bin_right", "count"}, {}, prov};
        for (std::size_t i = 0; i < h.counts.size(); ++i) t.add({h.left(i), h.right(i), h.counts[i]});
        r.tables.push_back(std::move(t));
        json s = stats_json(pop.summary.at(h.name));
        if (!h.counts.empty()) {
            s["mode_bin_left"] = h.left(h.mode_bin());
            s["mode_bin_right"] = h.right(h.mode_bin());
        }
        r.summary["metrics"][h.name] = s;
    }
    r.summary["instances"] = pop.metrics.size();
    r.summary["all_valid"] = pop.n_all_valid;
    r.summary["no_excursion"] = pop.n_no_excursion;
    return r;
}

// ---------------------------------------------------------------- ipi sweep

const IpiCell& NoiseLevelResult::cell(double ipi) const {
    for (auto& c : cells)
        if (c.ipi == ipi) return c;
    throw std::out_of_range("no IPI cell");
}

IpiSweepResult ipi_sweep(const ExperimentConfig& cfg, const CircuitPresets& presets,
                         const std::vector<double>& noise_levels, Exec exec) {
    Network net = build_cricket_circuit(drifted(presets, cfg.drift_factor));
    const std::size_t nl = noise_levels.size(), nt = static_cast<std::size_t>(cfg.trials), ni = cfg.ipi_set.size();
    std::vector<TrialCounts> flat(nl * nt * ni);
    for_each_index(flat.size(), exec, [&](std::size_t k) {
        std::size_t l = k / (nt * ni), t = (k / ni) % nt, i = k % ni;
        flat[k] = run_trial(net, cfg, cfg.ipi_set[i], noise_levels[l],
                            trial_seed(cfg.seed, static_cast<int>(t), static_cast<int>(i)), cfg.dt);
    });

    IpiSweepResult res;
    for (std::size_t l = 0; l < nl; ++l) {
        NoiseLevelResult L;
        L.noise = noise_levels[l];
        L.raw.assign(nt, {});
        for (std::size_t t = 0; t < nt; ++t) {
            std::vector<IpiCount> counts;
            for (std::size_t i = 0; i < ni; ++i) {
                const TrialCounts& c = flat[(l * nt + t) * ni + i];
                L.raw[t].push_back(c);
                counts.push_back({c.ipi, c.ln3, c.ln4});
            }
            L.trials.push_back(classify(counts, cfg.target_ipi));
        }
        for (std::size_t i = 0; i < ni; ++i) {
            IpiCell cell;
            cell.ipi = cfg.ipi_set[i];
            std::vector<double> a, b;
            int responded = 0;
            for (std::size_t t = 0; t < nt; ++t) {
                a.push_back(L.raw[t][i].ln3);
                b.push_back(L.raw[t][i].ln4);
                responded += L.raw[t][i].ln4 >= 1;
            }
            cell.ln3 = summarize(a);
            cell.ln4 = summarize(b);
            cell.response_rate = static_cast<double>(responded) / static_cast<double>(nt);
            L.cells.push_back(cell);
        }
        int fp = 0, fn = 0, ok = 0;
        for (auto& o : L.trials) {
            fp += o.false_positive;
            fn += o.false_negative;
            ok += o.verdict == Verdict::correct;
        }
        L.false_positive_rate = static_cast<double>(fp) / static_cast<double>(nt);
        L.false_negative_rate = static_cast<double>(fn) / static_cast<double>(nt);
        L.correct_rate = static_cast<double>(ok) / static_cast<double>(nt);
        res.levels.push_back(std::move(L));
    }
    return res;
}

Report run_ipi_sweep(const ExperimentConfig& cfg, Exec exec) {
    IpiSweepResult s = ipi_sweep(cfg, circuit_presets(cfg, cfg.circuit_point), cfg.noise_levels, exec);
    s.point = cfg.circuit_point;
    Report r;
    r.experiment = "ipi-sweep";
    r.config = config_to_json(cfg);
    json prov = provenance(cfg.seed, cfg.dt);
    Table counts{"counts", {"noise", "ipi", "ln3_mean", "ln3_sd", "ln4_mean", "ln4_sd", "ln4_response_rate"}, {}, prov};
    Table trials{"trials", {"noise", "trial", "ipi", "ln2_first", "ln2_second", "ln3", "ln4"}, {}, prov};
    Table verdicts{"verdicts", {"noise", "trial", "verdict", "false_positive", "false_negative"}, {}, prov};
    for (auto& L : s.levels) {
        for (auto& c : L.cells)
            counts.add({L.noise, c.ipi, c.ln3.mean, c.ln3.sd, c.ln4.mean, c.ln4.sd, c.response_rate});
        for (std::size_t t = 0; t < L.raw.size(); ++t) {
            for (auto& c : L.raw[t]) trials.add({L.noise, t, c.ipi, c.ln2_first, c.ln2_second, c.ln3, c.ln4});
            const auto& o = L.trials[t];
            verdicts.add({L.noise, t, to_string(o.verdict), o.false_positive, o.false_negative});
        }
        r.summary["levels"].push_back({{"noise", L.noise},
                                       {"false_positive_rate", L.false_positive_rate},
                                       {"false_negative_rate", L.false_negative_rate},
                                       {"correct_rate", L.correct_rate}});
    }
    r.summary["circuit_point"] = s.point;
    r.tables.push_back(std::move(counts));
    r.tables.push_back(std::move(trials));
    r.tables.push_back(std::move(verdicts));
    return r;
}

// ---------------------------------------------------------------- boundary

std::size_t BoundaryResult::n_pass() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](auto& p) { return p.pass; }));
}

std::vector<bool> BoundaryResult::pass_mask() const {
    std::vector<bool> m;
    for (auto& p : points) m.push_back(p.pass);
    return m;
}

BoundaryResult boundary_sweep(const ExperimentConfig& cfg, double noise, std::uint64_t seed, double drift,
                              Exec exec, bool stop_on_failure) {
    BoundaryResult res;
    res.noise = noise;
    res.drift = drift;
    res.seed = seed;
    res.rows = cfg.grid_w_ln3_ln4.size();
    res.cols = cfg.grid_w_an1_ln3.size();
    res.points.resize(res.rows * res.cols);
    const std::size_t ni = cfg.ipi_set.size();
    for_each_index(res.points.size(), exec, [&](std::size_t k) {
        GridPoint& g = res.points[k];
        g.w_ln3_ln4 = cfg.grid_w_ln3_ln4[k / res.cols];
        g.w_an1_ln3 = cfg.grid_w_an1_ln3[k % res.cols];
        Network net = build_cricket_circuit(drifted(circuit_presets(cfg, OperatingPoint{g.w_an1_ln3, g.w_ln3_ln4}), drift));
        g.pass = true;
        for (int t = 0; t < cfg.trials; ++t) {
            std::vector<IpiCount> counts;
            for (std::size_t i = 0; i < ni; ++i) {
                TrialCounts c = run_trial(net, cfg, cfg.ipi_set[i], noise, trial_seed(seed, t, static_cast<int>(i)), cfg.dt);
                counts.push_back({c.ipi, c.ln3, c.ln4});
            }
            ClassificationOutcome o = classify(counts, cfg.target_ipi);
            ++g.trials_run;
            g.false_positive_trials += o.false_positive;
            g.false_negative_trials += o.false_negative;
            if (o.verdict != Verdict::correct) {
                g.pass = false;
                if (stop_on_failure) break;
            }
        }
    });
    return res;
}

Report run_boundary_sweep(const ExperimentConfig& cfg, Exec exec) {
    BoundaryResult b = boundary_sweep(cfg, cfg.noise, cfg.seed, cfg.drift_factor, exec);
    Report r;
    r.experiment = "boundary";
    r.config = config_to_json(cfg);
    json prov = provenance(cfg.seed, cfg.dt);
    prov["noise"] = b.noise;
    prov["drift_factor"] = b.drift;
    Table grid{"grid", {"w_an1_ln3", "w_ln3_ln4", "pass", "false_positive_trials", "false_negative_trials", "trials_run"}, {}, prov};
    Table edge{"boundary", {"w_an1_ln3", "w_ln3_ln4"}, {}, prov};
    std::vector<std::string> art;
    for (std::size_t i = 0; i < b.rows; ++i) {
        std::string line;
        for (std::size_t j = 0; j < b.cols; ++j) {
            const GridPoint& g = b.points[i * b.cols + j];
            grid.add({g.w_an1_ln3, g.w_ln3_ln4, g.pass, g.false_positive_trials, g.false_negative_trials, g.trials_run});
            line += g.pass ? '.' : (g.false_positive_trials ? 'P' : 'N');
            if (!g.pass) continue;
            // passing points with a failing or missing 4-neighbour
            bool edge_pt = i == 0 || j == 0 || i + 1 == b.rows || j + 1 == b.cols;
            auto fails = [&](std::size_t a, std::size_t c) { return !b.points[a * b.cols + c].pass; };
            if (!edge_pt) edge_pt = fails(i - 1, j) || fails(i + 1, j) || fails(i, j - 1) || fails(i, j + 1);
            if (edge_pt) edge.add({g.w_an1_ln3, g.w_ln3_ln4});
        }
        art.push_back(line);
    }
    r.summary["passing_points"] = b.n_pass();
    r.summary["grid_points"] = b.points.size();
    r.summary["map"] = art;  // rows follow grid_w_ln3_ln4, '.' pass, 'P' false positive, 'N' false negative
    r.tables.push_back(std::move(grid));
    r.tables.push_back(std::move(edge));
    return r;
}

// ---------------------------------------------------------------- delay configuration

DelaySweepResult delay_config_sweep(const ExperimentConfig& cfg, Exec exec) {
    const NeuronParams& neuron = neuron_preset(cfg, cfg.delay_config_preset);
    const DelayElementConfig& base = delay_preset(cfg, cfg.delay_config_preset);
    const std::size_t ni = cfg.grid_w_inh.size(), ne = cfg.grid_w_exc.size();
    DelaySweepResult res;
    res.points.resize(ni * ne);
    for_each_index(res.points.size(), exec, [&](std::size_t k) {
        DelaySweepPoint& p = res.points[k];
        p.w_exc = cfg.grid_w_exc[k / ni];
        p.w_inh = cfg.grid_w_inh[k % ni];
        DelayElementConfig d = base;
        d.inh.weight = p.w_inh;
        d.exc.weight = p.w_exc;
        p.m = characterize_delay(d, neuron, cfg.delay_sweep_duration, cfg.dt);
    });

    auto at = [&](std::size_t e, std::size_t i) -> const DelayMetrics& { return res.points[e * ni + i].m; };
    auto ordered = [](const std::vector<double>& w, std::size_t a, std::size_t b) { return w[a] <= w[b]; };
    res.tau_inh_monotone = res.v_max_monotone = true;
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t i = 0; i < ni; ++i)
            for (std::size_t i2 = 0; i2 < ni; ++i2)
                if (i != i2 && ordered(cfg.grid_w_inh, i, i2) && at(e, i).tau_inh > at(e, i2).tau_inh)
                    res.tau_inh_monotone = false;
    for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t e = 0; e < ne; ++e)
            for (std::size_t e2 = 0; e2 < ne; ++e2)
                if (e != e2 && ordered(cfg.grid_w_exc, e, e2) && at(e, i).V_max > at(e2, i).V_max)
                    res.v_max_monotone = false;
    res.tau_inh_lo = res.v_max_lo = 1e300;
    res.tau_inh_hi = res.v_max_hi = -1e300;
    for (auto& p : res.points) {
        res.tau_inh_lo = std::min(res.tau_inh_lo, p.m.tau_inh);
        res.tau_inh_hi = std::max(res.tau_inh_hi, p.m.tau_inh);
        res.v_max_lo = std::min(res.v_max_lo, p.m.V_max);
        res.v_max_hi = std::max(res.v_max_hi, p.m.V_max);
    }
    return res;
}

Report run_delay_config_sweep(const ExperimentConfig& cfg, Exec exec) {
    DelaySweepResult s = delay_config_sweep(cfg, exec);
    Report r;
    r.experiment = "delay-sweep";
    r.config = config_to_json(cfg);
    Table t{"grid", {"w_inh", "w_exc", "V_min", "V_max", "tau_inh", "tau_exc", "tau_delay", "valid_mask"}, {},
            provenance(cfg.seed, cfg.dt)};
    for (auto& p : s.points)
        t.add({p.w_inh, p.w_exc, p.m.V_min, p.m.V_max, p.m.tau_inh, p.m.tau_exc, p.m.tau_delay, p.m.valid});
    r.tables.push_back(std::move(t));
    r.summary = {{"tau_inh_range", {s.tau_inh_lo, s.tau_inh_hi}},
                 {"v_max_range", {s.v_max_lo, s.v_max_hi}},
                 {"tau_inh_monotone_in_w_inh", s.tau_inh_monotone},
                 {"v_max_monotone_in_w_exc", s.v_max_monotone}};
    return r;
}

// ---------------------------------------------------------------- polychronous

PolychronousResult polychronous_demo(const ExperimentConfig& cfg) {
    const PolychronousSetup& ps = cfg.poly;
    PolychronousPresets pp;
    pp.detector = neuron_preset(cfg, ps.neuron);
    pp.base = delay_preset(cfg, ps.delay);
    pp.v_max_target = ps.v_max_target;
    pp.threshold_factor = ps.threshold_factor;
    pp.duration = ps.duration;
    pp.dt = cfg.dt;

    PolychronousResult res;
    res.net = build_polychronous(ps.sources, ps.detectors, ps.delays, pp);

    double last = *std::max_element(ps.pattern.begin(), ps.pattern.end());
    std::vector<double> swapped;
    for (double t : ps.pattern) swapped.push_back(last - t);

    SpikeTrain burst = delay_stim(pp.base.n_stim_spikes, pp.base.stim_window);
    auto run = [&](const std::string& name, const std::vector<double>* onsets) {
        PatternOutcome o;
        o.name = name;
        Stimuli stim;
        if (onsets) {
            o.onsets = *onsets;
            for (int i = 0; i < ps.sources; ++i) stim[source_name(i)] = shifted(burst, (*onsets)[i]);
        }
        SimResult r = simulate(res.net, stim, ps.duration, cfg.dt);
        for (int j = 0; j < ps.detectors; ++j)
            o.detector_spikes.push_back(static_cast<int>(r.spikes_of(detector_name(j)).size()));
        res.patterns.push_back(o);
    };
    run("matched", &ps.pattern);
    run("swapped", &swapped);
    run("silent", nullptr);
    return res;
}

Report run_polychronous_demo(const ExperimentConfig& cfg) {
    PolychronousResult p = polychronous_demo(cfg);
    Report r;
    r.experiment = "polychronous";
    r.config = config_to_json(cfg);
    json prov = provenance(cfg.seed, cfg.dt);
    Table edges{"edges", {"source", "detector", "w_inh", "w_exc", "tau_inh_syn", "tau_exc_syn"}, {}, prov};
    for (std::size_t e = 0; e + 1 < p.net.synapses.size(); e += 2) {
        const auto& a = p.net.synapses[e];
        const auto& b = p.net.synapses[e + 1];
        edges.add({a.pre, a.post, a.params.weight, b.params.weight, a.params.tau, b.params.tau});
    }
    std::vector<std::string> cols{"pattern"};
    for (int j = 0; j < cfg.poly.detectors; ++j) cols.push_back(detector_name(j));
    Table out{"detections", cols, {}, prov};
    for (auto& o : p.patterns) {
        std::vector<json> row{o.name};
        for (int n : o.detector_spikes) row.push_back(n);
        out.add(row);
        r.summary["patterns"][o.name] = {{"onsets", o.onsets}, {"detector_spikes", o.detector_spikes}};
    }
    r.summary["detector_threshold"] = p.net.neurons.front().params.V_T;
    r.tables.push_back(std::move(edges));
    r.tables.push_back(std::move(out));
    return r;
}

// ---------------------------------------------------------------- detect

DetectResult detect(const ExperimentConfig& cfg) {
    Network net = build_cricket_circuit(drifted(circuit_presets(cfg, cfg.circuit_point), cfg.drift_factor));
    DetectResult d;
    std::uint64_t seed = trial_seed(cfg.seed, 0, 0);
    d.stimulus = trial_stimulus(cfg, cfg.detect_ipi, cfg.noise, seed);
    d.sim = simulate(net, {{"AN1", d.stimulus}}, trial_duration(cfg, cfg.detect_ipi), cfg.dt, {"LN2", "LN3", "LN4"});
    d.counts = run_trial(net, cfg, cfg.detect_ipi, cfg.noise, seed, cfg.dt);
    return d;
}

Report run_detect(const ExperimentConfig& cfg) {
    DetectResult d = detect(cfg);
    Report r;
    r.experiment = "detect";
    r.config = config_to_json(cfg);
    json prov = provenance(trial_seed(cfg.seed, 0, 0), cfg.dt);
    Table stim{"stimulus", {"time"}, {}, prov};
    stim.csv_header = false;  // plain spike-train file, one time per line
    for (double t : d.stimulus.times) stim.add({t});
    Table spikes{"spikes", {"neuron", "time"}, {}, prov};
    for (auto& [id, sp] : d.sim.spikes)
        for (double t : sp) spikes.add({id, t});
    r.tables.push_back(std::move(stim));
    r.tables.push_back(std::move(spikes));
    for (auto& [id, tr] : d.sim.traces) {
        Table t{"trace_" + id, {"time", "V"}, {}, prov};
        for (std::size_t i = 0; i < tr.size(); ++i) t.add({tr.time(i), tr.v[i]});
        r.tables.push_back(std::move(t));
    }
    r.summary = {{"ipi", d.counts.ipi},       {"noise", cfg.noise},        {"ln2_first", d.counts.ln2_first},
                 {"ln2_second", d.counts.ln2_second}, {"ln3", d.counts.ln3}, {"ln4", d.counts.ln4}};
    return r;
}

}  // namespace pirnet
