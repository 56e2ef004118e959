#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pirnet/config.hpp"
#include "pirnet/experiments.hpp"
#include "pirnet/report.hpp"

using namespace pirnet;

int main(int argc, char** argv) {
    CLI::App app{"pirnet: AdEx/DPI delay-element simulator and experiment harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt, noise;
    std::optional<int> trials;
    std::string out_dir = "out";
    std::string format = "json";
    bool serial = false;

    app.add_option("--config", config_path, "JSON config file (defaults to the built-in presets)")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "experiment seed");
    app.add_option("--dt", dt, "integration step, ms")->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--trials", trials, "trials per IPI")->check(CLI::PositiveNumber);
    app.add_option("--noise", noise, "ISI noise fraction")->check(CLI::Range(0.0, 1.0));
    app.add_flag("--serial", serial, "run the serial reference path");

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"characterize", "mismatched population characterization of the delay element"},
        {"detect", "single double-pulse run of the cricket circuit with trace dump"},
        {"ipi-sweep", "spike counts over the IPI set and noise levels"},
        {"boundary", "classification boundary over the AN1->LN3 / LN3->LN4 weight grid"},
        {"delay-sweep", "(w_inh, w_exc) sweep in saturated-inhibition mode"},
        {"polychronous", "spatiotemporal pattern detection with delay elements"},
    };
    std::optional<double> ipi, drift;
    std::string point;
    for (const Sub& s : subs) {
        CLI::App* sc = app.add_subcommand(s.name, s.help);
        sc->fallthrough();
        if (std::string(s.name) == "detect") sc->add_option("--ipi", ipi, "interpulse interval, ms");
        if (std::string(s.name) == "detect" || std::string(s.name) == "ipi-sweep" ||
            std::string(s.name) == "boundary") {
            sc->add_option("--point", point, "circuit operating point (central, boundary, ...)");
            sc->add_option("--drift", drift, "time-constant drift factor")->check(CLI::PositiveNumber);
        }
    }

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (dt) cfg.dt = *dt;
        if (trials) cfg.trials = *trials;
        if (noise) {
            cfg.noise = *noise;
            cfg.noise_levels = {*noise};
        }
        if (ipi) cfg.detect_ipi = *ipi;
        if (drift) cfg.drift_factor = *drift;
        if (!point.empty()) cfg.circuit_point = point;
        validate(cfg);

        Exec exec = serial ? Exec::serial : Exec::parallel;
        std::string cmd = app.get_subcommands().front()->get_name();
        Report r;
        if (cmd == "characterize")
            r = run_characterization(cfg, exec);
        else if (cmd == "detect")
            r = run_detect(cfg);
        else if (cmd == "ipi-sweep")
            r = run_ipi_sweep(cfg, exec);
        else if (cmd == "boundary")
            r = run_boundary_sweep(cfg, exec);
        else if (cmd == "delay-sweep")
            r = run_delay_config_sweep(cfg, exec);
        else
            r = run_polychronous_demo(cfg);

        for (auto& f : write_report(r, out_dir, format == "csv" ? OutFormat::csv : OutFormat::json))
            std::cerr << "wrote " << f << '\n';
        std::cout << r.summary.dump(2) << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
