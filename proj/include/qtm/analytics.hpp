// analytics.hpp - entanglement, purity and heat-current diagnostics evaluated
// on two-qubit states and models.

#pragma once

#include "qtm/models.hpp"
#include "qtm/state.hpp"
#include "qtm/steady.hpp"

#include <optional>

namespace qtm::analytics {

enum class ConcurrenceMethod { general_wootters, x_state, closed_form };

struct ConcurrenceBreakdown {
    double value = 0.0;  // max(0, raw), in [0, 1]
    double raw = 0.0;    // signed pre-clipping value, kept for diagnostics
    ConcurrenceMethod method = ConcurrenceMethod::general_wootters;

    // Populated by the closed form: f and the two h factors of the X-state
    // coherence-vs-population competition.
    std::optional<double> f;
    std::optional<double> h_populations;
    std::optional<double> h_inverted;
};

// Wootters concurrence: lambda_i are the descending square roots of the
// eigenvalues of rho * (sy kron sy) conj(rho) (sy kron sy), and
// C = max(0, l1 - l2 - l3 - l4).
ConcurrenceBreakdown concurrence(const DensityMatrix& rho);

// True when rho has nonzeros only on the diagonal and the anti-diagonal.
bool has_x_structure(const ops::Matrix& rho, double tol = 1e-10);

// Fast path for X states: C = 2 max(0, |rho23| - sqrt(rho11 rho44),
// |rho14| - sqrt(rho22 rho33)). Rejects inputs without the X pattern.
ConcurrenceBreakdown concurrence_x_state(const DensityMatrix& rho, double pattern_tol = 1e-10);

// Steady-state concurrence of the reset model straight from the parameters,
// without building the state.
ConcurrenceBreakdown concurrence_closed_form(const models::ResetParams& p);

// Tr(rho^2), in [1/4, 1] for two qubits.
double purity(const DensityMatrix& rho);

// Energy per unit time flowing from qubit k into its bath (positive = out of
// the system). Reset model: Q_k = p_k E <1|(rho_k - tau_k)|1>.
double heat_current(const DensityMatrix& rho, const models::ResetParams& p, models::Bath bath);

// Dissipator route valid for every model: Q_k = -Tr(H0 D_k(rho)) using the
// generator's per-bath split. Agrees with the reset formula exactly.
double heat_current(const DensityMatrix& rho, const models::Liouvillian& l, models::Bath bath);

// One row of a parameter sweep: the inputs plus every steady-state observable.
struct SweepRecord {
    models::ModelKind model = models::ModelKind::reset;
    double E = 1.0;
    double g = 0.0;
    double rate_c = 0.0;  // p_c or Gamma_c
    double rate_h = 0.0;  // p_h or Gamma_h
    double T_c = 0.0;
    double T_h = 0.0;
    double U = 0.0;
    double concurrence = 0.0;
    double purity = 0.0;
    double Q_c = 0.0;
    double Q_h = 0.0;
    double residual = 0.0;
    double uniqueness_gap = 0.0;
};

SweepRecord steady_report(const models::ResetParams& p, const steady::SolveOptions& opts = {});
SweepRecord steady_report(const models::FluxParams& p, const steady::SolveOptions& opts = {});
SweepRecord steady_report(const models::DotParams& p, const steady::SolveOptions& opts = {});

}  // namespace qtm::analytics
