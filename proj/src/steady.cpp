#include "qtm/steady.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace qtm::steady {

namespace {

// Row functional computing Tr(devectorize(v)) under column stacking: the
// diagonal entries of a 4x4 matrix sit at vec indices 0, 5, 10, 15.
ops::Matrix trace_row() {
    ops::Matrix row = ops::Matrix::Zero(1, 16);
    for (Eigen::Index i = 0; i < 4; ++i) row(0, 5 * i) = 1.0;
    return row;
}

DensityMatrix clean_state(const ops::Matrix& raw, double herm_tol, double psd_tol) {
    // Checks run on the raw solution; the stored state only removes rounding
    // noise (symmetrization + exact trace normalization).
    if (!ops::is_hermitian(raw, herm_tol)) {
        std::ostringstream msg;
        msg << "steady state is not Hermitian within " << herm_tol;
        throw NoConvergence(ops::max_abs_diff(raw, ops::Matrix(raw.adjoint())), msg.str());
    }
    ops::Matrix sym = 0.5 * (raw + raw.adjoint());
    sym /= sym.trace().real();
    try {
        return DensityMatrix(std::move(sym), {1e-12, 1e-12, psd_tol});
    } catch (const std::invalid_argument& e) {
        throw NoConvergence(0.0, std::string("steady state failed validation: ") + e.what());
    }
}

}  // namespace

SteadyStateResult solve_steady(const models::Liouvillian& l, const SolveOptions& opts) {
    const Eigen::Index dim = l.generator.rows();
    if (dim != 16 || l.generator.cols() != 16)
        throw std::invalid_argument("solve_steady: expected a 16x16 generator");

    ops::Matrix stacked(dim + 1, dim);
    stacked.topRows(dim) = l.generator;
    stacked.bottomRows(1) = trace_row();

    ops::Vector rhs = ops::Vector::Zero(dim + 1);
    rhs(dim) = 1.0;

    Eigen::ColPivHouseholderQR<ops::Matrix> qr(stacked);
    const ops::Vector v = qr.solve(rhs);
    const double residual = (l.generator * v).norm();

    double gap = 0.0;
    if (opts.compute_gap) {
        Eigen::JacobiSVD<ops::Matrix> svd(l.generator);
        gap = svd.singularValues()(dim - 2);  // second smallest
        if (gap <= opts.uniqueness_threshold) {
            std::ostringstream msg;
            msg << "steady state is not unique: singular-value gap " << gap
                << " below threshold " << opts.uniqueness_threshold;
            throw NonUniqueSteadyState(gap, msg.str());
        }
    }

    if (!(residual <= opts.residual_tol)) {
        std::ostringstream msg;
        msg << "steady-state residual " << residual << " exceeds " << opts.residual_tol;
        throw NoConvergence(residual, msg.str());
    }

    SteadyStateResult result{clean_state(ops::devectorize(v), 1e-10, 1e-8),
                             residual, gap, static_cast<int>(qr.rank())};
    return result;
}

DensityMatrix analytic_reset_steady(const models::ResetParams& p) {
    p.validate();
    const ops::Matrix tau_c = thermal_qubit(p.E, p.T_c).state();
    const ops::Matrix tau_h = thermal_qubit(p.E, p.T_h).state();
    const double r_c = thermal_qubit(p.E, p.T_c).ground_occupation;
    const double r_h = thermal_qubit(p.E, p.T_h).ground_occupation;

    const double gamma = 1.0 / (2.0 * p.g * p.g + p.p_c * p.p_h);
    const double p_sum = p.p_c + p.p_h;

    const ops::Matrix mix = p.p_c * tau_c + p.p_h * tau_h;
    ops::Matrix y = ops::Matrix::Zero(4, 4);
    y(1, 2) = ops::Complex(0.0, 1.0);   // i |01><10|
    y(2, 1) = ops::Complex(0.0, -1.0);  // -i |10><01|

    ops::Matrix rho = gamma * (p.p_c * p.p_h * ops::kron(tau_c, tau_h) +
                               (2.0 * p.g * p.g / (p_sum * p_sum)) * ops::kron(mix, mix) +
                               (p.g * p.p_c * p.p_h * (r_c - r_h) / p_sum) * y);
    return DensityMatrix(std::move(rho));
}

Trajectory evolve(const DensityMatrix& rho0, const models::Liouvillian& l,
                  double t_final, double dt, const EvolveOptions& opts) {
    if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    if (t_final < 0.0) throw std::invalid_argument("evolve: t_final must be nonnegative");
    if (opts.snapshot_stride < 1)
        throw std::invalid_argument("evolve: snapshot_stride must be >= 1");

    const ops::Matrix& gen = l.generator;
    const DensityMatrix::Tolerances drift_tol{opts.drift_tol, opts.drift_tol, opts.drift_tol};

    auto validate = [&](const ops::Vector& v) {
        const ops::Matrix m = ops::devectorize(v);
        const double drift = std::max(std::abs(m.trace() - ops::Complex(1.0, 0.0)),
                                      ops::max_abs_diff(m, ops::Matrix(m.adjoint())));
        if (drift > opts.drift_tol) {
            std::ostringstream msg;
            msg << "evolve: trace/Hermiticity drift " << drift << " exceeds "
                << opts.drift_tol << "; reduce dt";
            throw StepSizeTooLarge(drift, msg.str());
        }
        return DensityMatrix(m, drift_tol);
    };

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);

    ops::Vector v = ops::vectorize(rho0.mat());
    const auto steps = static_cast<long>(std::ceil(t_final / dt - 1e-12));
    for (long step = 1; step <= steps; ++step) {
        const ops::Vector k1 = gen * v;
        const ops::Vector k2 = gen * (v + 0.5 * dt * k1);
        const ops::Vector k3 = gen * (v + 0.5 * dt * k2);
        const ops::Vector k4 = gen * (v + dt * k3);
        v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (step % opts.snapshot_stride == 0 || step == steps) {
            traj.times.push_back(step * dt);
            traj.states.push_back(validate(v));
        }
    }
    return traj;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const ops::Matrix diff = rho.mat() - sigma.mat();
    Eigen::SelfAdjointEigenSolver<ops::Matrix> solver(diff);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("trace_distance: eigensolver failed");
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace qtm::steady
