// run.hpp - command implementations shared by the CLI binary and tests.

#pragma once

#include "qtm/analytics.hpp"
#include "qtm/config.hpp"
#include "qtm/optimize.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qtm::cli {

inline constexpr int exit_success = 0;
inline constexpr int exit_verification_failure = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_failure = 3;

// steady: one steady state; prints the density matrix (real and imaginary
// parts) and the record to `out`, and writes a one-row CSV when configured.
void run_steady(const RunConfig& cfg, std::ostream& out);

// sweep: evaluates the grid (outer axis major) and returns the rows in
// deterministic order. Optimizes couplings per point when configured.
std::vector<analytics::SweepRecord> sweep_records(const RunConfig& cfg);
void run_sweep(const RunConfig& cfg, std::ostream& out);

struct ThresholdRecord {
    double T_c = 0.0;
    std::optional<double> threshold_T_h;  // nullopt = unreachable
};

std::vector<ThresholdRecord> threshold_records(const RunConfig& cfg);
void run_threshold(const RunConfig& cfg, std::ostream& out);

opt::OptimizationResult optimize_result(const RunConfig& cfg);
void run_optimize(const RunConfig& cfg, std::ostream& out);

// Maps exceptions onto the documented exit codes; diagnostics go to `err`.
int dispatch(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace qtm::cli
