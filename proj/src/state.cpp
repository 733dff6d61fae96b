#include "qtm/state.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace qtm {

ThermalQubit thermal_qubit(double energy, double temperature) {
    if (!(energy > 0.0))
        throw std::invalid_argument("thermal_qubit: energy must be positive");
    if (temperature < 0.0 || std::isnan(temperature))
        throw std::invalid_argument("thermal_qubit: temperature must be nonnegative");
    ThermalQubit q;
    q.energy = energy;
    q.temperature = temperature;
    if (temperature == 0.0)
        q.ground_occupation = 1.0;
    else if (std::isinf(temperature))
        q.ground_occupation = 0.5;
    else
        q.ground_occupation = 1.0 / (1.0 + std::exp(-energy / temperature));
    return q;
}

DensityMatrix::DensityMatrix(ops::Matrix m, const Tolerances& tol) : mat_(std::move(m)) {
    if (mat_.rows() != 4 || mat_.cols() != 4)
        throw std::invalid_argument("DensityMatrix: expected a 4x4 matrix");
    const double herm = ops::max_abs_diff(mat_, ops::Matrix(mat_.adjoint()));
    if (herm > tol.hermiticity) {
        std::ostringstream msg;
        msg << "DensityMatrix: not Hermitian, deviation " << herm;
        throw std::invalid_argument(msg.str());
    }
    const double trace_err = std::abs(mat_.trace() - ops::Complex(1.0, 0.0));
    if (trace_err > tol.trace) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace deviates from 1 by " << trace_err;
        throw std::invalid_argument(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ops::Matrix> solver(0.5 * (mat_ + mat_.adjoint()));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("DensityMatrix: eigenvalue check failed to converge");
    const double lambda_min = solver.eigenvalues().minCoeff();
    if (lambda_min < -tol.psd) {
        std::ostringstream msg;
        msg << "DensityMatrix: negative eigenvalue " << lambda_min;
        throw std::invalid_argument(msg.str());
    }
}

DensityMatrix product_state(const ThermalQubit& cold, const ThermalQubit& hot) {
    return DensityMatrix(ops::kron(cold.state(), hot.state()));
}

}  // namespace qtm
