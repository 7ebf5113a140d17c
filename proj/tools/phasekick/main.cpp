#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "experiments.hpp"
#include "output.hpp"
#include "phasekick/errors.hpp"
#include "phasekick/version.hpp"

namespace {

struct Args {
    std::string experiment;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path = "-";
    std::string format = "csv";
};

int run(const Args& args) {
    using namespace phasekick::cli;

    const Config cfg =
        build_config(args.experiment, args.config_path, args.overrides);
    const Format format =
        args.format == "json" ? Format::Json : Format::Csv;

    // Buffer the whole table so a mid-run failure never leaves a truncated
    // output file behind.
    std::ostringstream buf;
    const int code = run_experiment(cfg, format, buf);

    if (args.out_path == "-") {
        std::cout << buf.str();
    } else {
        std::ofstream file(args.out_path);
        if (!file) {
            throw ConfigError("cannot open output file '" + args.out_path +
                              "'");
        }
        file << buf.str();
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace phasekick::cli;

    CLI::App app{"phasekick: geometric phase kickback experiments"};
    app.set_version_flag("--version", std::string(phasekick::kVersion));
    app.require_subcommand(1);

    std::map<std::string, Args> per_sub;
    for (const auto& name : experiment_names()) {
        Args& args = per_sub[name];
        args.experiment = name;
        CLI::App* sub = app.add_subcommand(name, experiment_description(name));
        sub->add_option("--config", args.config_path,
                        "key = value parameter file");
        sub->add_option("--set", args.overrides, "override one key=value")
            ->allow_extra_args(false);
        sub->add_option("--out", args.out_path,
                        "output path, '-' for stdout");
        sub->add_option("--format", args.format, "table format")
            ->check(CLI::IsMember({"csv", "json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const Args& args = per_sub.at(app.get_subcommands().front()->get_name());
    try {
        return run(args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const phasekick::truncation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
