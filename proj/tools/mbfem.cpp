// Command-line front end: solve, study and validate subcommands.

#include "mbfem/commands.hpp"
#include "mbfem/errors.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Moving-boundary nonlocal reaction-diffusion finite element solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int jobs = 1;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Run configuration file")->required();
        cmd->add_option("--out", out_dir, "Output directory (overrides the config's out=)");
        cmd->add_option("--jobs", jobs, "Concurrent runs in a study")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "Seed for random probe points in validate");
    };
    auto* solve = app.add_subcommand("solve", "Run one solve and write snapshots.csv / errors.csv");
    auto* study = app.add_subcommand("study", "Run a convergence study and write study.csv / rates.csv");
    auto* validate = app.add_subcommand("validate", "Check the problem hypotheses");
    for (auto* cmd : {solve, study, validate}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        mbfem::RunConfig config = mbfem::load_config(config_path);
        if (!out_dir.empty()) config.out = out_dir;
        if (solve->parsed()) return mbfem::cmd_solve(config, std::cout);
        if (study->parsed()) return mbfem::cmd_study(config, jobs, std::cout);
        return mbfem::cmd_validate(config, seed, std::cout);
    } catch (const mbfem::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return mbfem::exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return mbfem::exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return mbfem::exit_io_failure;
    }
}
