#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "tdmdc/cli/commands.hpp"
#include "tdmdc/cli/config.hpp"

namespace {

struct Subcommand {
    const char* name;
    const char* help;
    void (*run)(const tdmdc::cli::RunConfig&);
};

constexpr Subcommand kSubcommands[] = {
    {"simulate", "simulate a reference model and write excitation/response CSV", tdmdc::cli::cmd_simulate},
    {"identify", "identify modes at the largest delay order and write the diagram",
     tdmdc::cli::cmd_identify},
    {"sweep", "stabilization sweep over the delay-order range with statistics", tdmdc::cli::cmd_sweep},
    {"noise-study", "Monte-Carlo SNR x delay-order study with the dispersion slope table",
     tdmdc::cli::cmd_noise_study},
    {"mac", "MAC matrix between two shape files", tdmdc::cli::cmd_mac},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-delay DMDc modal identification"};
    app.set_version_flag("--version", tdmdc::cli::kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<std::string, std::vector<CLI::Option*>> options;
    std::map<std::string, CLI::App*> subs;
    for (const auto& sub : kSubcommands) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        cmd->add_option("--config", config_path, "key = value configuration file");
        for (const auto& key : tdmdc::cli::config_keys()) {
            std::string help = key.help;
            if (!key.default_value.empty()) {
                help += " [" + key.default_value + "]";
            }
            options[key.name].push_back(cmd->add_option("--" + key.name, values[key.name], help));
        }
        subs[sub.name] = cmd;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        tdmdc::cli::RunConfig config;
        if (!config_path.empty()) {
            config.load_file(config_path);
        }
        for (const auto& [name, opts] : options) {
            for (const CLI::Option* opt : opts) {
                if (opt->count() > 0) {
                    config.set(name, values[name]);
                }
            }
        }
        for (const auto& sub : kSubcommands) {
            if (subs[sub.name]->parsed()) {
                sub.run(config);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "tdmdc: error: " << e.what() << '\n';
        return tdmdc::cli::exit_code_for(e);
    }
    return 0;
}
