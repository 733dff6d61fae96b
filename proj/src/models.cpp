#include "qtm/models.hpp"

#include <cmath>

namespace qtm::models {

namespace {

constexpr double regime_cap = 1e-2;

void check_positive(double value, const char* name) {
    if (!(value > 0.0))
        throw std::invalid_argument(std::string(name) + " must be positive");
}

void check_temperature(double value, const char* name) {
    if (value < 0.0 || std::isnan(value))
        throw std::invalid_argument(std::string(name) + " must be nonnegative");
}

// Superoperator of rho -> tau kron tr_first(rho) for the fixed 2x2 tau.
// Column-stacking index of entry (r, c) of a 4x4 matrix is c*4 + r.
ops::Matrix reset_channel_first(const ops::Matrix& tau) {
    ops::Matrix s = ops::Matrix::Zero(16, 16);
    // (tau kron B)[(a b),(a' b')] = tau(a,a') B(b,b'), B(b,b') = sum_x rho[(x b),(x b')]
    for (Eigen::Index a = 0; a < 2; ++a)
        for (Eigen::Index ap = 0; ap < 2; ++ap)
            for (Eigen::Index b = 0; b < 2; ++b)
                for (Eigen::Index bp = 0; bp < 2; ++bp)
                    for (Eigen::Index x = 0; x < 2; ++x) {
                        const Eigen::Index row = (2 * ap + bp) * 4 + (2 * a + b);
                        const Eigen::Index col = (2 * x + bp) * 4 + (2 * x + b);
                        s(row, col) += tau(a, ap);
                    }
    return s;
}

// Superoperator of rho -> tr_second(rho) kron tau.
ops::Matrix reset_channel_second(const ops::Matrix& tau) {
    ops::Matrix s = ops::Matrix::Zero(16, 16);
    // (A kron tau)[(a b),(a' b')] = A(a,a') tau(b,b'), A(a,a') = sum_x rho[(a x),(a' x)]
    for (Eigen::Index a = 0; a < 2; ++a)
        for (Eigen::Index ap = 0; ap < 2; ++ap)
            for (Eigen::Index b = 0; b < 2; ++b)
                for (Eigen::Index bp = 0; bp < 2; ++bp)
                    for (Eigen::Index x = 0; x < 2; ++x) {
                        const Eigen::Index row = (2 * ap + bp) * 4 + (2 * a + b);
                        const Eigen::Index col = (2 * ap + x) * 4 + (2 * a + x);
                        s(row, col) += tau(b, bp);
                    }
    return s;
}

// vec(i[rho, H]) = i (H^T kron 1 - 1 kron H) vec(rho).
ops::Matrix commutator_superop(const ops::Matrix& h) {
    const ops::Complex i_unit(0.0, 1.0);
    return i_unit * (ops::super_right(h) - ops::super_left(h));
}

// vec(D[J] rho) = (conj(J) kron J - 1/2 (1 kron J^dag J) - 1/2 ((J^dag J)^T kron 1)) vec(rho).
ops::Matrix dissipator_superop(const ops::Matrix& j) {
    const ops::Matrix jdj = j.adjoint() * j;
    return ops::kron(j.conjugate(), j) -
           0.5 * (ops::super_left(jdj) + ops::super_right(jdj));
}

std::vector<JumpTerm> four_operator_terms(double rate_up_c, double rate_dn_c,
                                          double rate_up_h, double rate_dn_h) {
    const ops::Matrix sp = ops::sigma_plus();
    const ops::Matrix p0 = ops::projector(2, 0);
    const ops::Matrix p1 = ops::projector(2, 1);

    const ops::Matrix j1 = ops::kron(p0, sp);  // hot qubit 0 -> 1, cold in ground
    const ops::Matrix j2 = ops::kron(sp, p0);  // cold qubit 0 -> 1, hot in ground
    const ops::Matrix j3 = ops::kron(p1, sp);  // hot qubit 0 -> 1, cold excited
    const ops::Matrix j4 = ops::kron(sp, p1);  // cold qubit 0 -> 1, hot excited

    std::vector<JumpTerm> terms;
    terms.reserve(8);
    terms.push_back({j1, rate_up_h, Bath::hot});
    terms.push_back({j2, rate_up_c, Bath::cold});
    terms.push_back({j3, rate_up_h, Bath::hot});
    terms.push_back({j4, rate_up_c, Bath::cold});
    terms.push_back({ops::Matrix(j1.adjoint()), rate_dn_h, Bath::hot});
    terms.push_back({ops::Matrix(j2.adjoint()), rate_dn_c, Bath::cold});
    terms.push_back({ops::Matrix(j3.adjoint()), rate_dn_h, Bath::hot});
    terms.push_back({ops::Matrix(j4.adjoint()), rate_dn_c, Bath::cold});
    return terms;
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::reset: return "reset";
        case ModelKind::flux: return "flux";
        case ModelKind::dot: return "dot";
    }
    return "unknown";
}

bool ResetParams::perturbative() const {
    return g <= regime_cap * E && p_c <= regime_cap * E && p_h <= regime_cap * E;
}

void ResetParams::validate() const {
    check_positive(E, "ResetParams: E");
    check_positive(g, "ResetParams: g");
    check_positive(p_c, "ResetParams: p_c");
    check_positive(p_h, "ResetParams: p_h");
    check_temperature(T_c, "ResetParams: T_c");
    check_temperature(T_h, "ResetParams: T_h");
}

bool FluxParams::weak_coupling() const {
    return g <= regime_cap * E && Gamma_c <= regime_cap * E && Gamma_h <= regime_cap * E;
}

void FluxParams::validate() const {
    check_positive(E, "FluxParams: E");
    check_positive(g, "FluxParams: g");
    check_positive(Gamma_c, "FluxParams: Gamma_c");
    check_positive(Gamma_h, "FluxParams: Gamma_h");
    check_temperature(T_c, "FluxParams: T_c");
    check_temperature(T_h, "FluxParams: T_h");
}

bool DotParams::weak_coupling() const {
    return g <= regime_cap * E && Gamma_c <= regime_cap * E && Gamma_h <= regime_cap * E;
}

void DotParams::validate() const {
    check_positive(E, "DotParams: E");
    check_positive(g, "DotParams: g");
    check_positive(Gamma_c, "DotParams: Gamma_c");
    check_positive(Gamma_h, "DotParams: Gamma_h");
    check_temperature(T_c, "DotParams: T_c");
    check_temperature(T_h, "DotParams: T_h");
    if (U < 0.0 || std::isnan(U))
        throw std::invalid_argument("DotParams: U must be nonnegative");
}

double bose_einstein(double energy, double temperature) {
    check_positive(energy, "bose_einstein: energy");
    check_temperature(temperature, "bose_einstein: temperature");
    if (temperature == 0.0) return 0.0;
    if (std::isinf(temperature))
        throw std::invalid_argument(
            "bose_einstein: occupation diverges at infinite temperature; use a large finite T");
    return 1.0 / std::expm1(energy / temperature);
}

double fermi_dirac(double energy, double temperature) {
    check_positive(energy, "fermi_dirac: energy");
    check_temperature(temperature, "fermi_dirac: temperature");
    if (temperature == 0.0) return 0.0;
    if (std::isinf(temperature)) return 0.5;
    return 1.0 / (std::exp(energy / temperature) + 1.0);
}

ops::Matrix build_h0(double E) {
    check_positive(E, "build_h0: E");
    const ops::Matrix n = ops::projector(2, 1);
    const ops::Matrix id = ops::identity(2);
    return E * (ops::kron(n, id) + ops::kron(id, n));
}

ops::Matrix build_hint(double g) {
    if (std::isnan(g)) throw std::invalid_argument("build_hint: g must be finite");
    ops::Matrix h = ops::Matrix::Zero(4, 4);
    h(2, 1) = g;  // |10><01|
    h(1, 2) = g;  // |01><10|
    return h;
}

ops::Matrix build_hdot(double E, double g, double U) {
    if (U < 0.0 || std::isnan(U))
        throw std::invalid_argument("build_hdot: U must be nonnegative");
    ops::Matrix h = build_h0(E) + build_hint(g);
    h(3, 3) += U;
    return h;
}

Liouvillian reset_liouvillian(const ResetParams& p) {
    p.validate();
    const ops::Matrix tau_c = thermal_qubit(p.E, p.T_c).state();
    const ops::Matrix tau_h = thermal_qubit(p.E, p.T_h).state();
    const ops::Matrix id16 = ops::Matrix::Identity(16, 16);

    Liouvillian l;
    l.model_tag = ModelKind::reset;
    l.energy = p.E;
    l.cold_dissipator = p.p_c * (reset_channel_first(tau_c) - id16);
    l.hot_dissipator = p.p_h * (reset_channel_second(tau_h) - id16);
    l.generator = commutator_superop(build_h0(p.E) + build_hint(p.g)) +
                  l.cold_dissipator + l.hot_dissipator;
    return l;
}

std::vector<JumpTerm> flux_rates(const FluxParams& p) {
    p.validate();
    const double n_c = bose_einstein(p.E, p.T_c);
    const double n_h = bose_einstein(p.E, p.T_h);
    return four_operator_terms(p.Gamma_c * n_c, p.Gamma_c * (1.0 + n_c),
                               p.Gamma_h * n_h, p.Gamma_h * (1.0 + n_h));
}

std::vector<JumpTerm> dot_rates(const DotParams& p) {
    p.validate();
    // J1/J2 move the system between singly occupied levels split by E; J3/J4
    // create or destroy double occupancy and exchange E + U with the bath.
    // Filling both transitions at n_F(E) would make the steady state exactly
    // U-independent, so the Coulomb blockade enters through these rates.
    const double n_c = fermi_dirac(p.E, p.T_c);
    const double n_h = fermi_dirac(p.E, p.T_h);
    const double n_c_dbl = fermi_dirac(p.E + p.U, p.T_c);
    const double n_h_dbl = fermi_dirac(p.E + p.U, p.T_h);

    auto terms = four_operator_terms(p.Gamma_c * n_c, p.Gamma_c * (1.0 - n_c),
                                     p.Gamma_h * n_h, p.Gamma_h * (1.0 - n_h));
    terms[2].rate = p.Gamma_h * n_h_dbl;          // J3
    terms[3].rate = p.Gamma_c * n_c_dbl;          // J4
    terms[6].rate = p.Gamma_h * (1.0 - n_h_dbl);  // J3^dag
    terms[7].rate = p.Gamma_c * (1.0 - n_c_dbl);  // J4^dag
    return terms;
}

std::vector<JumpTerm> two_operator_rates(const FluxParams& p) {
    p.validate();
    const double n_c = bose_einstein(p.E, p.T_c);
    const double n_h = bose_einstein(p.E, p.T_h);
    const ops::Matrix id = ops::identity(2);
    const ops::Matrix j_c = ops::kron(ops::sigma_plus(), id);
    const ops::Matrix j_h = ops::kron(id, ops::sigma_plus());

    std::vector<JumpTerm> terms;
    terms.reserve(4);
    terms.push_back({j_c, p.Gamma_c * n_c, Bath::cold});
    terms.push_back({j_h, p.Gamma_h * n_h, Bath::hot});
    terms.push_back({ops::Matrix(j_c.adjoint()), p.Gamma_c * (1.0 + n_c), Bath::cold});
    terms.push_back({ops::Matrix(j_h.adjoint()), p.Gamma_h * (1.0 + n_h), Bath::hot});
    return terms;
}

Liouvillian lindblad_liouvillian(const ops::Matrix& H, const std::vector<JumpTerm>& jumps,
                                 ModelKind tag, double energy, double hermiticity_tol) {
    if (H.rows() != 4 || H.cols() != 4)
        throw std::invalid_argument("lindblad_liouvillian: expected a 4x4 Hamiltonian");
    if (!ops::is_hermitian(H, hermiticity_tol))
        throw std::invalid_argument("lindblad_liouvillian: Hamiltonian is not Hermitian");
    for (const auto& term : jumps)
        if (term.rate < 0.0 || std::isnan(term.rate))
            throw std::invalid_argument("lindblad_liouvillian: jump rates must be nonnegative");

    Liouvillian l;
    l.model_tag = tag;
    l.energy = energy;
    l.cold_dissipator = ops::Matrix::Zero(16, 16);
    l.hot_dissipator = ops::Matrix::Zero(16, 16);
    for (const auto& term : jumps) {
        ops::Matrix& target = term.bath == Bath::cold ? l.cold_dissipator : l.hot_dissipator;
        target += term.rate * dissipator_superop(term.op);
    }
    l.generator = commutator_superop(H) + l.cold_dissipator + l.hot_dissipator;
    return l;
}

Liouvillian flux_liouvillian(const FluxParams& p) {
    return lindblad_liouvillian(build_h0(p.E) + build_hint(p.g), flux_rates(p),
                                ModelKind::flux, p.E);
}

Liouvillian flux_liouvillian_two_op(const FluxParams& p) {
    return lindblad_liouvillian(build_h0(p.E) + build_hint(p.g), two_operator_rates(p),
                                ModelKind::flux, p.E);
}

Liouvillian dot_liouvillian(const DotParams& p) {
    return lindblad_liouvillian(build_hdot(p.E, p.g, p.U), dot_rates(p),
                                ModelKind::dot, p.E);
}

}  // namespace qtm::models
