// steady.hpp - steady-state solvers (numeric null-space and the reset-model
// closed form) and fixed-step transient integration.

#pragma once

#include "qtm/models.hpp"
#include "qtm/state.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qtm::steady {

struct NonUniqueSteadyState : std::runtime_error {
    double gap;
    explicit NonUniqueSteadyState(double gap_, const std::string& what)
        : std::runtime_error(what), gap(gap_) {}
};

struct NoConvergence : std::runtime_error {
    double residual;
    explicit NoConvergence(double residual_, const std::string& what)
        : std::runtime_error(what), residual(residual_) {}
};

struct StepSizeTooLarge : std::runtime_error {
    double drift;
    explicit StepSizeTooLarge(double drift_, const std::string& what)
        : std::runtime_error(what), drift(drift_) {}
};

struct SolveOptions {
    double residual_tol = 1e-10;
    double uniqueness_threshold = 1e-8;
    bool compute_gap = true;  // skip the SVD of the generator when false
};

struct SteadyStateResult {
    DensityMatrix state;
    double residual = 0.0;        // ||L vec(rho)||_2 of the raw solution
    double uniqueness_gap = 0.0;  // second-smallest singular value of the generator
    int rank = 0;                 // numerical rank of the stacked system
};

// Solves the stacked least-squares system [L ; trace-row] v = [0 ; 1] with a
// rank-revealing factorization. Throws NoConvergence when the residual bound
// fails and NonUniqueSteadyState when the generator's null space is not
// one-dimensional (gap below threshold).
SteadyStateResult solve_steady(const models::Liouvillian& l, const SolveOptions& opts = {});

// Closed-form steady state of the reset model,
//   rho = gamma [ p_c p_h tau_c kron tau_h
//                 + 2g^2/(p_c+p_h)^2 (p_c tau_c + p_h tau_h)^{kron 2}
//                 + g p_c p_h (r_c - r_h)/(p_c+p_h) Y ]
// with gamma = 1/(2g^2 + p_c p_h) and Y = i|01><10| - i|10><01|.
DensityMatrix analytic_reset_steady(const models::ResetParams& p);

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;

    const DensityMatrix& final_state() const { return states.back(); }
};

struct EvolveOptions {
    double drift_tol = 1e-8;   // allowed trace/Hermiticity drift before failing
    int snapshot_stride = 1;   // store every n-th step (the endpoint is always stored)
};

// Fixed-step fourth-order Runge-Kutta integration of dv/dt = L v. Snapshots
// are re-validated against drift_tol; the state is never renormalized, a run
// whose drift exceeds the tolerance throws StepSizeTooLarge.
Trajectory evolve(const DensityMatrix& rho0, const models::Liouvillian& l,
                  double t_final, double dt, const EvolveOptions& opts = {});

// Trace distance (1/2)||rho - sigma||_1 between two-qubit states.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qtm::steady
