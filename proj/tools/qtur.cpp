// qtur: steady-state observables, TUR trade-offs and operating-mode maps of
// a driven harmonic-oscillator thermal machine.
//
//   qtur point --Omega 0.35 --omega1 0.65 --format json
//   qtur resonance --Omega-axis 0.05:0.95:91
//   qtur optimize --metric Q_P --Omega-axis 0.05:0.95:91

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qtur/cli.hpp"
#include "qtur/io.hpp"

int main(int argc, char** argv) {
    using namespace qtur;

    CLI::App app{"Driven quantum harmonic oscillator heat machine: currents, fluctuations and TURs"};
    app.set_version_flag("--version", "qtur 0.1.0");

    std::string command_name;
    app.add_option("command", command_name, "point | sweep | resonance | boundaries | optimize | oracle-compare")
        ->required()
        ->check(CLI::IsMember({"point", "sweep", "resonance", "boundaries", "optimize", "oracle-compare"}));

    std::string config_path;
    app.add_option("-c,--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);

    std::vector<std::string> sets;
    app.add_option("-s,--set", sets, "key=value override (repeatable)");

    // One flag per configuration key; all of them override file values.
    std::vector<std::pair<std::string, std::string>> key_values(config_keys().size());
    for (std::size_t i = 0; i < config_keys().size(); ++i) {
        const auto& key = config_keys()[i];
        key_values[i].first = key;
        const std::string flag = key == "output" ? "-o,--output" : "--" + key;
        app.add_option(flag, key_values[i].second, "override '" + key + "'");
    }

    std::string Omega_axis, omega1_axis, metric_name, mode_name, interval_text;
    unsigned threads = 0;
    app.add_option("--Omega-axis", Omega_axis, "drive-frequency axis lo:hi:count");
    app.add_option("--omega1-axis", omega1_axis, "Lorentzian peak axis lo:hi:count");
    app.add_option("--metric", metric_name, "Q_P | Q_J1 | eta_norm | cop_norm")
        ->check(CLI::IsMember({"Q_P", "Q_J1", "eta_norm", "cop_norm"}));
    app.add_option("--mode", mode_name, "interval searched by optimize: engine | refrigerator")
        ->check(CLI::IsMember({"engine", "refrigerator"}));
    app.add_option("--interval", interval_text, "explicit optimize interval lo:hi");
    app.add_option("-j,--threads", threads, "worker threads for sweeps (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    RunConfig cfg;
    CommandArgs args;
    try {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        std::vector<Override> overrides;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'", 0);
            overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
        }
        for (const auto& [key, value] : key_values) {
            if (!value.empty()) overrides.emplace_back(key, value);
        }
        cfg = parse_config(text, overrides);

        args.command = *parse_command(command_name);
        args.threads = threads;
        if (!Omega_axis.empty()) args.Omega_axis = parse_axis("Omega", Omega_axis);
        if (!omega1_axis.empty()) args.omega1_axis = parse_axis("omega1", omega1_axis);
        if (!metric_name.empty()) args.metric = parse_metric(metric_name);
        if (!mode_name.empty()) args.mode = mode_name == "engine" ? RowMode::Engine : RowMode::Refrigerator;
        if (!interval_text.empty()) {
            const Axis range = parse_axis("interval", interval_text + ":2");
            args.interval = std::make_pair(range.min, range.max);
        }
    } catch (const std::exception& e) {
        std::cerr << "qtur: " << e.what() << '\n';
        return kExitValidation;
    }

    const CommandResult result = run_subcommand(cfg, args);
    for (const auto& line : result.diagnostics) std::cerr << "qtur: " << line << '\n';
    if (!result.output.empty()) {
        try {
            write_output(cfg.output, result.output);
        } catch (const std::exception& e) {
            std::cerr << "qtur: " << e.what() << '\n';
            return kExitValidation;
        }
    }
    return result.exit_code;
}
