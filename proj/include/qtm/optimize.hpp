// optimize.hpp - constrained maximization of steady-state concurrence over
// coupling parameters, and threshold-temperature searches.

#pragma once

#include "qtm/analytics.hpp"
#include "qtm/models.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qtm::opt {

// A free coordinate of the search box. Recognized names: "g", "rate_c",
// "rate_h" (p_k for the reset model, Gamma_k otherwise) and "T_h".
struct FreeParam {
    std::string name;
    double lo = 1e-6;
    double hi = 1e-2;
    bool log_scale = true;
};

struct OptimizationProblem {
    models::ModelKind model = models::ModelKind::reset;
    double E = 1.0;
    double T_c = 0.0;
    double T_h = 0.0;  // fixed value, ignored when "T_h" is a free parameter
    double U = 0.0;    // dot model only

    std::vector<FreeParam> free_params;
    int grid_points = 8;        // coarse log-spaced seeding grid, per axis
    double simplex_tol = 1e-4;  // relative simplex diameter at termination
    long max_evals = 10000;
    int workers = 1;

    void validate() const;
};

// The paper's coupling windows per model, used when free_params is empty.
std::vector<FreeParam> default_free_params(models::ModelKind model);

struct OptimizationResult {
    double best_value = 0.0;
    std::vector<std::string> names;
    std::vector<double> best_point;  // parallel to names, original units
    long evaluations = 0;
    bool all_grid_points_zero = false;  // entanglement unreachable on the grid
    std::vector<double> improvement_history;  // best value after each improvement
};

// Objective: Wootters concurrence of the steady state at the given fixed
// temperatures. Coarse grid scan followed by Nelder-Mead refinement from the
// best grid point; fully deterministic (ties broken by lexicographic
// parameter order).
OptimizationResult maximize_concurrence(const OptimizationProblem& prob);

struct ThresholdOptions {
    double temperature_tol = 1e-3;  // bisection tolerance in T_h/E
    double detection = 1e-6;        // concurrence level counting as entangled
    double T_h_cap = 1e6;
    int scan_points = 24;      // log-spaced probes bracketing the onset
    int grid_points = 6;       // per-axis seeding for the inner optimizer
    long max_evals = 4000;     // per inner optimization
    int workers = 1;
};

// Smallest T_h at which optimized steady-state concurrence exceeds the
// detection level, or nullopt when no T_h up to the cap works.
std::optional<double> threshold_hot_temperature(models::ModelKind model, double T_c,
                                                double U = 0.0,
                                                const ThresholdOptions& opts = {});

struct CriticalColdOptions {
    double temperature_tol = 5e-3;  // bisection tolerance in T_c/E
    double bracket_hi = 0.5;        // initial upper bracket, doubled until separable
    double bracket_cap = 1e4;
    ThresholdOptions probe;         // settings of the per-T_c entanglement probe
};

// Supremum of T_c admitting any entanglement, optimizing over couplings and T_h.
double critical_cold_temperature(models::ModelKind model, double U = 0.0,
                                 const CriticalColdOptions& opts = {});

}  // namespace qtm::opt
