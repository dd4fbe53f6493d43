#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dsamp/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"distributed stream sampling simulator"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list the builtin scenarios");

    auto* run = app.add_subcommand("run", "run a scenario (builtin name or config file)");
    std::string target;
    run->add_option("scenario", target, "builtin scenario name or path to a config file")
        ->required();
    dsamp::cli::RunOptions options;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--trials", trials, "override the trial count");
    run->add_option("--out-dir", options.out_dir, "directory for CSV/JSON artifacts");
    run->add_flag("--check,!--no-check", options.check, "run the scenario's checks");
    run->add_flag("--quiet", options.quiet, "suppress the per-check summary");
    run->add_option("--threads", options.threads, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            dsamp::cli::list_scenarios(std::cout);
            return 0;
        }
        options.seed = seed;
        options.trials = trials;
        dsamp::cli::Scenario scenario;
        try {
            scenario = dsamp::cli::builtin_scenario(target);
        } catch (const std::invalid_argument&) {
            scenario = dsamp::cli::load_scenario_file(target);
        }
        return dsamp::cli::run_scenario(scenario, options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
