// Command line front end for the viscous shock / wall experiments.

#include "vsw/config.hpp"
#include "vsw/errors.hpp"
#include "vsw/experiment.hpp"
#include "vsw/io.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>

int main(int argc, char** argv) {
    CLI::App app{"Viscous shock with impermeable wall and periodic perturbations"};
    app.footer(vsw::config_reference_text());
    app.require_subcommand(0, 1);

    bool print_reference = false;
    app.add_flag("--print-reference-config", print_reference, "Print the reference configuration as JSON");

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;

    using Cmd = std::function<int(const vsw::ExperimentConfig&, const std::filesystem::path&)>;
    const std::vector<std::tuple<std::string, std::string, Cmd>> commands{
        {"hugoniot", "Solve the jump conditions (shock.json)", vsw::cmd_hugoniot},
        {"profile", "Integrate the shock profile (profile.csv, profile.json)", vsw::cmd_profile},
        {"periodic", "Evolve the periodic far fields (periodic_*.csv, periodic.json)", vsw::cmd_periodic},
        {"shift", "Zero-mass shifts and shift equations (shift.csv, shift.json)", vsw::cmd_shift},
        {"evolve", "Full run with snapshots and diagnostics", vsw::cmd_evolve},
        {"verify", "Invariant suite for one configuration (verify.json)", vsw::cmd_verify},
        {"sweep", "Repeat evolve over sweep.values of sweep.key (sweep.csv)", vsw::cmd_sweep},
    };
    std::map<CLI::App*, Cmd> dispatch;
    for (const auto& [name, help, fn] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON configuration file (default: built-in reference)");
        sub->add_option("--out", out_dir, "Output directory (default: output.dir from the config)");
        sub->add_option("--override", overrides, "Dotted KEY=VALUE override, repeatable")->take_all();
        dispatch[sub] = fn;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (print_reference) {
        std::cout << vsw::to_json(vsw::reference_config());
        return 0;
    }
    const auto subs = app.get_subcommands();
    if (subs.empty()) {
        std::cout << app.help();
        return 0;
    }
    try {
        const std::string text = config_path.empty() ? vsw::to_json(vsw::reference_config()) : vsw::io::read_file(config_path);
        const vsw::ExperimentConfig cfg = vsw::parse_config(vsw::apply_overrides(text, overrides));
        const std::filesystem::path out = out_dir.empty() ? cfg.output_dir : std::filesystem::path(out_dir);
        return dispatch.at(subs.front())(cfg, out);
    } catch (const vsw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const vsw::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const vsw::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
