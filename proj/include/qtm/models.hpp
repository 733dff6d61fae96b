// models.hpp - Hamiltonians, jump terms and 16x16 Liouvillian generators for
// the three dissipation models (reset/collision, bosonic flux-qubit Lindblad,
// fermionic double-dot Lindblad with Coulomb term).

#pragma once

#include "qtm/ops.hpp"
#include "qtm/state.hpp"

#include <string>
#include <vector>

namespace qtm::models {

enum class ModelKind { reset, flux, dot };
enum class Bath { cold, hot };

std::string to_string(ModelKind kind);

// Couplings and rates are expressed in units of the qubit gap E. The regime
// flags mark the perturbative window (couplings <= 1e-2 E) in which the master
// equations are derived; construction outside it is allowed but flagged.
struct ResetParams {
    double E = 1.0;
    double g = 0.0;
    double p_c = 0.0;
    double p_h = 0.0;
    double T_c = 0.0;
    double T_h = 0.0;

    bool perturbative() const;
    void validate() const;  // throws std::invalid_argument
};

struct FluxParams {
    double E = 1.0;
    double g = 0.0;
    double Gamma_c = 0.0;
    double Gamma_h = 0.0;
    double T_c = 0.0;
    double T_h = 0.0;

    bool weak_coupling() const;
    void validate() const;
};

struct DotParams {
    double E = 1.0;
    double g = 0.0;
    double Gamma_c = 0.0;
    double Gamma_h = 0.0;
    double T_c = 0.0;
    double T_h = 0.0;
    double U = 0.0;  // inter-dot Coulomb energy, units of E

    bool weak_coupling() const;
    void validate() const;
};

// One Lindblad dissipator term: rate * (J rho J^dag - 1/2 {J^dag J, rho}).
struct JumpTerm {
    ops::Matrix op;      // 4x4
    double rate = 0.0;   // nonnegative
    Bath bath = Bath::cold;
};

// Generator of the vectorized master equation dv/dt = generator * v, with the
// dissipative part split per bath so heat currents can be read off. The
// Hamiltonian commutator lives only in `generator`.
struct Liouvillian {
    ops::Matrix generator;        // 16x16
    ops::Matrix cold_dissipator;  // 16x16, bath-local part
    ops::Matrix hot_dissipator;   // 16x16
    ModelKind model_tag = ModelKind::reset;
    double energy = 1.0;          // qubit gap E used by the builder

    const ops::Matrix& bath_part(Bath bath) const {
        return bath == Bath::cold ? cold_dissipator : hot_dissipator;
    }
};

// ----------------------------- bath statistics ------------------------------

// Bose-Einstein occupation 1/(e^{E/T} - 1); T = 0 maps to 0, T = inf rejected.
double bose_einstein(double energy, double temperature);

// Fermi-Dirac occupation 1/(e^{E/T} + 1); T = 0 maps to 0, T = inf to 1/2.
double fermi_dirac(double energy, double temperature);

// ----------------------------- Hamiltonians ----------------------------------

// E (|1><1| kron 1 + 1 kron |1><1|) = diag(0, E, E, 2E).
ops::Matrix build_h0(double E);

// g (|10><01| + |01><10|), the energy-conserving exchange coupling.
ops::Matrix build_hint(double g);

// build_h0 + build_hint + U |11><11|; reduces to the flux/reset Hamiltonian at U = 0.
ops::Matrix build_hdot(double E, double g, double U);

// ----------------------------- generators ------------------------------------

// Collision-model generator of
//   drho/dt = i[rho, H0 + Hint] + sum_k p_k (Phi_k(rho) - rho)
// with Phi_c(rho) = tau_c kron tr_c(rho) and Phi_h(rho) = tr_h(rho) kron tau_h.
Liouvillian reset_liouvillian(const ResetParams& p);

// The eight jump terms of the four-operator Lindblad form: excitation
// operators J1 = |0><0| kron s+, J2 = s+ kron |0><0|, J3 = |1><1| kron s+,
// J4 = s+ kron |1><1| at bosonic absorption rates, plus their conjugates at
// emission rates. Hot-side terms are J1, J3; cold-side terms are J2, J4.
std::vector<JumpTerm> flux_rates(const FluxParams& p);

// Same eight operators with Fermi-Dirac absorption/emission rates.
std::vector<JumpTerm> dot_rates(const DotParams& p);

// The two-operator main-text form: J_c = s+ kron 1, J_h = 1 kron s+ and
// conjugates, with the same bosonic rates as flux_rates.
std::vector<JumpTerm> two_operator_rates(const FluxParams& p);

// Generic Lindblad generator i[rho, H] + sum_i rate_i D[J_i](rho).
// Rejects non-Hermitian H (max deviation above hermiticity_tol).
Liouvillian lindblad_liouvillian(const ops::Matrix& H, const std::vector<JumpTerm>& jumps,
                                 ModelKind tag, double energy,
                                 double hermiticity_tol = 1e-10);

Liouvillian flux_liouvillian(const FluxParams& p);
Liouvillian flux_liouvillian_two_op(const FluxParams& p);
Liouvillian dot_liouvillian(const DotParams& p);

}  // namespace qtm::models
