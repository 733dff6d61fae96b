// config.hpp - flat key=value run configuration for the command line tool.

#pragma once

#include "qtm/models.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace qtm::cli {

// Configuration problems map to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { steady, sweep, threshold, optimize, verify };

struct SweepAxis {
    std::string param;  // canonical: g, rate_c, rate_h, T_c, T_h, U
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    bool log_scale = false;

    std::vector<double> values() const;
};

// Parsed and validated configuration. The file format is line-oriented
// `key = value`; blank lines and lines starting with '#' are ignored.
// Unknown and duplicate keys are rejected. Temperatures accept the literal
// token "inf" (reset/dot models only).
struct RunConfig {
    models::ModelKind model = models::ModelKind::reset;

    double E = 1.0;
    std::optional<double> g;
    std::optional<double> rate_c;  // p_c / Gamma_c
    std::optional<double> rate_h;  // p_h / Gamma_h
    std::optional<double> T_c;
    std::optional<double> T_h;
    double U = 0.0;

    // sweep command
    std::optional<SweepAxis> axis1;
    std::optional<SweepAxis> axis2;
    bool optimize_couplings = false;

    // optimize command
    bool optimize_T_h = false;
    double th_min = 1e-3;
    double th_max = 1e6;

    // optimizer settings (sweep with optimize=true, optimize, threshold)
    std::map<std::string, std::pair<double, double>> bounds;  // overrides per free param
    int grid_points = 8;
    long max_evals = 10000;

    // threshold command
    std::optional<SweepAxis> tc_axis;
    double th_cap = 1e6;

    std::string output;  // CSV path; empty = stdout only
    std::optional<double> tolerance;  // steady-solve residual tolerance override
    int workers = 1;
};

// Parses and validates for the given command. Throws ConfigError.
RunConfig parse_config(const std::string& text, Command cmd);
RunConfig load_config(const std::string& path, Command cmd);

}  // namespace qtm::cli
