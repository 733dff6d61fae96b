// qtm - steady states, entanglement and heat currents of a two-qubit
// autonomous thermal machine under three dissipation models.

#include "qtm/config.hpp"
#include "qtm/run.hpp"
#include "qtm/verify.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string output;
    int workers = 0;       // 0 = take from config
    double tolerance = 0;  // 0 = take from config
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "path to the run configuration")->required();
    cmd->add_option("--output", args.output, "CSV output path (overrides the config)");
    cmd->add_option("--workers", args.workers, "worker threads for grid evaluation");
    cmd->add_option("--tolerance", args.tolerance, "steady-state residual tolerance");
}

int run_command(qtm::cli::Command cmd, const CommonArgs& args) {
    qtm::cli::RunConfig cfg;
    try {
        cfg = qtm::cli::load_config(args.config_path, cmd);
        if (!args.output.empty()) cfg.output = args.output;
        if (args.workers > 0) cfg.workers = args.workers;
        if (args.tolerance > 0) cfg.tolerance = args.tolerance;
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return qtm::cli::exit_config_error;
    }
    return qtm::cli::dispatch(cmd, cfg, std::cout, std::cerr);
}

int run_verify(bool corrupt) {
    qtm::verify::Options opts;
    if (corrupt) opts.tolerance_scale = 1e-8;

    const auto report = qtm::verify::run_all(opts);
    std::string last_group;
    std::cout << std::left;
    for (const auto& check : report.checks) {
        if (check.group != last_group) {
            std::cout << check.group << "\n";
            last_group = check.group;
        }
        std::cout << "  " << (check.passed ? "[PASS] " : "[FAIL] ") << std::setw(42)
                  << check.name << " observed " << std::scientific << std::setprecision(3)
                  << check.observed << " bound " << check.bound << std::defaultfloat << "\n";
    }
    std::cout << (report.all_passed() ? "all checks passed" : "some checks FAILED") << "\n";
    return report.all_passed() ? qtm::cli::exit_success : qtm::cli::exit_verification_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit autonomous thermal machine: steady states, entanglement, heat"};
    app.require_subcommand(1);

    CommonArgs steady_args, sweep_args, threshold_args, optimize_args;

    auto* steady = app.add_subcommand("steady", "solve one steady state and report it");
    add_common(steady, steady_args);

    auto* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep into a CSV");
    add_common(sweep, sweep_args);

    auto* threshold =
        app.add_subcommand("threshold", "threshold hot temperature per cold temperature");
    add_common(threshold, threshold_args);

    auto* optimize = app.add_subcommand("optimize", "maximize steady-state concurrence");
    add_common(optimize, optimize_args);

    auto* verify = app.add_subcommand("verify", "run the built-in oracle suite");
    bool corrupt = false;
    verify->add_flag("--corrupt-tolerance", corrupt, "negative-control hook: tighten bounds")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qtm::cli::exit_config_error;
    }

    if (steady->parsed()) return run_command(qtm::cli::Command::steady, steady_args);
    if (sweep->parsed()) return run_command(qtm::cli::Command::sweep, sweep_args);
    if (threshold->parsed()) return run_command(qtm::cli::Command::threshold, threshold_args);
    if (optimize->parsed()) return run_command(qtm::cli::Command::optimize, optimize_args);
    if (verify->parsed()) return run_verify(corrupt);
    return qtm::cli::exit_config_error;
}
