#include "qtm/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qtm::analytics {

namespace {

ops::Matrix spin_flip_kernel() {
    // sy kron sy = antidiag(-1, 1, 1, -1)
    ops::Matrix m = ops::Matrix::Zero(4, 4);
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
}

SweepRecord report_from(const models::Liouvillian& l, double g, double rate_c, double rate_h,
                        double T_c, double T_h, double U, const steady::SolveOptions& opts) {
    const auto solved = steady::solve_steady(l, opts);
    SweepRecord rec;
    rec.model = l.model_tag;
    rec.E = l.energy;
    rec.g = g;
    rec.rate_c = rate_c;
    rec.rate_h = rate_h;
    rec.T_c = T_c;
    rec.T_h = T_h;
    rec.U = U;
    rec.concurrence = concurrence(solved.state).value;
    rec.purity = purity(solved.state);
    rec.Q_c = heat_current(solved.state, l, models::Bath::cold);
    rec.Q_h = heat_current(solved.state, l, models::Bath::hot);
    rec.residual = solved.residual;
    rec.uniqueness_gap = solved.uniqueness_gap;
    return rec;
}

}  // namespace

ConcurrenceBreakdown concurrence(const DensityMatrix& rho) {
    const ops::Matrix flip = spin_flip_kernel();
    const ops::Matrix rho_tilde = flip * rho.mat().conjugate() * flip;
    const ops::Vector evs = ops::eigenvalues(rho.mat() * rho_tilde);

    // Eigenvalues of rho rho~ are real and nonnegative up to rounding.
    std::array<double, 4> lambda{};
    for (Eigen::Index i = 0; i < 4; ++i)
        lambda[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, evs(i).real()));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());

    ConcurrenceBreakdown out;
    out.method = ConcurrenceMethod::general_wootters;
    out.raw = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    out.value = std::max(0.0, out.raw);
    return out;
}

bool has_x_structure(const ops::Matrix& rho, double tol) {
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) {
            const bool on_pattern = (i == j) || (i + j == 3);
            if (!on_pattern && std::abs(rho(i, j)) > tol) return false;
        }
    return true;
}

ConcurrenceBreakdown concurrence_x_state(const DensityMatrix& rho, double pattern_tol) {
    if (!has_x_structure(rho.mat(), pattern_tol))
        throw std::invalid_argument("concurrence_x_state: state lacks the X sparsity pattern");
    const ops::Matrix& m = rho.mat();
    const double inner = std::abs(m(1, 2)) - std::sqrt(std::max(0.0, m(0, 0).real() * m(3, 3).real()));
    const double outer = std::abs(m(0, 3)) - std::sqrt(std::max(0.0, m(1, 1).real() * m(2, 2).real()));

    ConcurrenceBreakdown out;
    out.method = ConcurrenceMethod::x_state;
    out.raw = 2.0 * std::max(inner, outer);
    out.value = std::max(0.0, out.raw);
    return out;
}

ConcurrenceBreakdown concurrence_closed_form(const models::ResetParams& p) {
    p.validate();
    const double r_c = thermal_qubit(p.E, p.T_c).ground_occupation;
    const double r_h = thermal_qubit(p.E, p.T_h).ground_occupation;
    const double gamma = 1.0 / (2.0 * p.g * p.g + p.p_c * p.p_h);
    const double p_sum = p.p_c + p.p_h;

    const double f = gamma * p.g * p.p_c * p.p_h * std::abs(r_c - r_h) / p_sum;
    auto h = [&](double rc, double rh) {
        const double mean = (p.p_c * rc + p.p_h * rh) / p_sum;
        return gamma * (p.p_c * p.p_h * rc * rh + 2.0 * p.g * p.g * mean * mean);
    };
    const double h_pop = h(r_c, r_h);
    const double h_inv = h(1.0 - r_c, 1.0 - r_h);

    ConcurrenceBreakdown out;
    out.method = ConcurrenceMethod::closed_form;
    out.f = f;
    out.h_populations = h_pop;
    out.h_inverted = h_inv;
    // X-state concurrence of the closed-form state: the coherence f competes
    // with the geometric mean of the |00> and |11> populations h, h~.
    out.raw = 2.0 * (f - std::sqrt(h_pop * h_inv));
    out.value = std::max(0.0, out.raw);
    return out;
}

double purity(const DensityMatrix& rho) {
    return (rho.mat() * rho.mat()).trace().real();
}

double heat_current(const DensityMatrix& rho, const models::ResetParams& p, models::Bath bath) {
    p.validate();
    const bool cold = bath == models::Bath::cold;
    const ops::Matrix reduced =
        cold ? ops::partial_trace_second(rho.mat()) : ops::partial_trace_first(rho.mat());
    const double occupation = reduced(1, 1).real();
    const double thermal =
        1.0 - thermal_qubit(p.E, cold ? p.T_c : p.T_h).ground_occupation;
    return (cold ? p.p_c : p.p_h) * p.E * (occupation - thermal);
}

double heat_current(const DensityMatrix& rho, const models::Liouvillian& l, models::Bath bath) {
    const ops::Matrix h0 = models::build_h0(l.energy);
    const ops::Matrix dissipated = ops::devectorize(l.bath_part(bath) * ops::vectorize(rho.mat()));
    return -(h0 * dissipated).trace().real();
}

SweepRecord steady_report(const models::ResetParams& p, const steady::SolveOptions& opts) {
    return report_from(models::reset_liouvillian(p), p.g, p.p_c, p.p_h, p.T_c, p.T_h, 0.0, opts);
}

SweepRecord steady_report(const models::FluxParams& p, const steady::SolveOptions& opts) {
    return report_from(models::flux_liouvillian(p), p.g, p.Gamma_c, p.Gamma_h, p.T_c, p.T_h, 0.0, opts);
}

SweepRecord steady_report(const models::DotParams& p, const steady::SolveOptions& opts) {
    return report_from(models::dot_liouvillian(p), p.g, p.Gamma_c, p.Gamma_h, p.T_c, p.T_h, p.U, opts);
}

}  // namespace qtm::analytics
