#include "qtm/verify.hpp"

#include "qtm/analytics.hpp"
#include "qtm/models.hpp"
#include "qtm/steady.hpp"

#include <cmath>
#include <random>

namespace qtm::verify {

namespace {

using models::ResetParams;

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(std::log10(lo), std::log10(hi));
    return std::pow(10.0, dist(rng));
}

ResetParams random_reset(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> temp(0.0, 2.0);
    ResetParams p;
    p.g = log_uniform(rng, 1e-4, 1e-2);
    p.p_c = log_uniform(rng, 1e-4, 1e-2);
    p.p_h = log_uniform(rng, 1e-4, 1e-2);
    p.T_c = temp(rng);
    p.T_h = temp(rng);
    return p;
}

}  // namespace

Report run_all(const Options& opts) {
    Report report;
    std::mt19937_64 rng(20250401ULL);
    const double scale = opts.tolerance_scale;

    auto record = [&](const std::string& group, const std::string& name, double observed,
                      double bound) {
        report.checks.push_back({group, name, observed <= bound * scale, observed, bound * scale});
    };

    // ---- Eq.-(4)-style closed form vs numeric null-space solve
    {
        double worst = 0.0;
        for (int i = 0; i < opts.draws; ++i) {
            const ResetParams p = random_reset(rng);
            const auto numeric = steady::solve_steady(models::reset_liouvillian(p));
            const auto closed = steady::analytic_reset_steady(p);
            worst = std::max(worst, ops::max_abs_diff(numeric.state.mat(), closed.mat()));
        }
        record("eq4-oracle", "closed-form vs numeric steady state", worst, 1e-10);
    }

    // ---- closed-form concurrence vs general Wootters
    {
        double worst = 0.0;
        for (int i = 0; i < opts.draws; ++i) {
            const ResetParams p = random_reset(rng);
            const double closed = analytics::concurrence_closed_form(p).value;
            const double wootters =
                analytics::concurrence(steady::analytic_reset_steady(p)).value;
            worst = std::max(worst, std::abs(closed - wootters));
        }
        record("concurrence-consistency", "parameter form vs Wootters", worst, 1e-10);
    }

    // ---- detailed balance of the Lindblad rates
    {
        double worst = 0.0;
        std::uniform_real_distribution<double> temp(0.05, 5.0);
        for (int i = 0; i < opts.draws; ++i) {
            const double T_c = temp(rng);
            const double T_h = temp(rng);
            const double gamma_c = log_uniform(rng, 1e-5, 1e-2);
            const double gamma_h = log_uniform(rng, 1e-5, 1e-2);
            const models::FluxParams fp{1.0, 1e-3, gamma_c, gamma_h, T_c, T_h};
            const models::DotParams dp{1.0, 1e-3, gamma_c, gamma_h, T_c, T_h, 10.0};
            for (const auto& terms : {models::flux_rates(fp), models::dot_rates(dp)}) {
                // terms[i] is the excitation partner of terms[i+4]
                for (std::size_t k = 0; k < 4; ++k) {
                    const double T = terms[k].bath == models::Bath::cold ? T_c : T_h;
                    const double ratio = terms[k].rate / terms[k + 4].rate;
                    worst = std::max(worst, std::abs(ratio / std::exp(-1.0 / T) - 1.0));
                }
            }
        }
        record("detailed-balance", "rate ratios vs Boltzmann factor", worst, 1e-12);
    }

    // ---- equilibrium separability for all three models
    {
        double worst = 0.0;
        std::uniform_real_distribution<double> temp(0.05, 2.0);
        for (int i = 0; i < opts.draws / 2; ++i) {
            const double T = temp(rng);
            const double g = log_uniform(rng, 1e-4, 1e-2);
            const double rc = log_uniform(rng, 1e-4, 1e-2);
            const double rh = log_uniform(rng, 1e-4, 1e-2);
            for (const auto& l :
                 {models::reset_liouvillian({1.0, g, rc, rh, T, T}),
                  models::flux_liouvillian({1.0, g, rc, rh, T, T}),
                  models::dot_liouvillian({1.0, g, rc, rh, T, T, 5.0})}) {
                const auto solved = steady::solve_steady(l);
                worst = std::max(worst, analytics::concurrence(solved.state).value);
            }
        }
        record("equilibrium-separability", "concurrence at T_c = T_h", worst, 1e-8);
    }

    // ---- generator structure: trace annihilation and Hermiticity preservation
    {
        double worst = 0.0;
        std::normal_distribution<double> normal(0.0, 1.0);
        auto random_density = [&] {
            ops::Matrix g(4, 4);
            for (Eigen::Index r = 0; r < 4; ++r)
                for (Eigen::Index c = 0; c < 4; ++c)
                    g(r, c) = ops::Complex(normal(rng), normal(rng));
            ops::Matrix rho = g * g.adjoint();
            rho /= rho.trace().real();
            return rho;
        };
        for (int i = 0; i < opts.draws / 4; ++i) {
            const ResetParams p = random_reset(rng);
            const models::FluxParams fp{1.0, p.g, p.p_c, p.p_h, 0.3 + p.T_c, 0.3 + p.T_h};
            const models::DotParams dp{1.0, p.g, p.p_c, p.p_h, p.T_c, p.T_h, 3.0};
            for (const auto& l : {models::reset_liouvillian(p), models::flux_liouvillian(fp),
                                  models::dot_liouvillian(dp)}) {
                const ops::Matrix rho = random_density();
                const ops::Matrix image = ops::devectorize(l.generator * ops::vectorize(rho));
                worst = std::max(worst, std::abs(image.trace()));
                worst = std::max(worst, ops::max_abs_diff(image, ops::Matrix(image.adjoint())));
            }
        }
        record("generator-structure", "trace annihilation and Hermiticity", worst, 1e-12);
    }

    // ---- heat bookkeeping on reset steady states
    {
        double worst_sum = 0.0;
        double worst_route = 0.0;
        for (int i = 0; i < opts.draws / 4; ++i) {
            const ResetParams p = random_reset(rng);
            const auto l = models::reset_liouvillian(p);
            const auto solved = steady::solve_steady(l);
            const double qc_eq5 = analytics::heat_current(solved.state, p, models::Bath::cold);
            const double qh_eq5 = analytics::heat_current(solved.state, p, models::Bath::hot);
            const double qc_diss = analytics::heat_current(solved.state, l, models::Bath::cold);
            worst_sum = std::max(worst_sum, std::abs(qc_eq5 + qh_eq5));
            worst_route = std::max(worst_route, std::abs(qc_eq5 - qc_diss));
        }
        record("heat-balance", "Q_c + Q_h at steady state", worst_sum, 1e-10);
        record("heat-balance", "rate-form vs dissipator-form Q_c", worst_route, 1e-12);
    }

    return report;
}

}  // namespace qtm::verify
