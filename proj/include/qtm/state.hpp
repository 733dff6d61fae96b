// state.hpp - two-qubit density matrices and single-qubit thermal states.

#pragma once

#include "qtm/ops.hpp"

#include <limits>

namespace qtm {

// Distinguished value for an infinite bath temperature (maps to occupation 1/2
// without evaluating the Boltzmann factor).
inline constexpr double infinite_temperature = std::numeric_limits<double>::infinity();

// A qubit equilibrated with a bath: tau = r |0><0| + (1-r) |1><1| with
// r = 1/(1 + e^{-E/T}). Temperatures are measured in units of the gap E
// (k_B = 1); T = 0 gives r = 1 exactly, T = infinite_temperature gives r = 1/2.
struct ThermalQubit {
    double energy = 1.0;
    double temperature = 0.0;
    double ground_occupation = 1.0;

    ops::Matrix state() const {
        ops::Matrix tau = ops::Matrix::Zero(2, 2);
        tau(0, 0) = ground_occupation;
        tau(1, 1) = 1.0 - ground_occupation;
        return tau;
    }
};

// Rejects E <= 0 and T < 0.
ThermalQubit thermal_qubit(double energy, double temperature);

struct StateTolerances {
    double hermiticity = 1e-12;
    double trace = 1e-12;
    double psd = 1e-10;
};

// Validated 4x4 state of the qubit pair, basis {|00>,|01>,|10>,|11>} with the
// first label belonging to the cold qubit. Construction checks Hermiticity,
// unit trace and positive semidefiniteness against the given tolerances and
// throws std::invalid_argument when violated.
class DensityMatrix {
public:
    using Tolerances = StateTolerances;

    explicit DensityMatrix(ops::Matrix m, const Tolerances& tol = {});

    const ops::Matrix& mat() const { return mat_; }
    ops::Complex operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

private:
    ops::Matrix mat_;
};

// tau_c kron tau_h for two thermal qubits (first factor = cold).
DensityMatrix product_state(const ThermalQubit& cold, const ThermalQubit& hot);

}  // namespace qtm
