// ops.hpp - small dense complex operators: Pauli/projector builders, Kronecker
// products, partial traces, vec/unvec, general eigenvalues.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace qtm::ops {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// ----------------------------- 2x2 building blocks --------------------------

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

inline Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0),
         Complex(0.0, 1.0), 0.0;
    return m;
}

inline Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

// Raising operator |1><0| on a single qubit.
inline Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

// Lowering operator |0><1|.
inline Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

// |i><j| in an n-dimensional space.
inline Matrix basis_op(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::out_of_range("basis_op: index out of range");
    Matrix m = Matrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

inline Matrix projector(Eigen::Index n, Eigen::Index i) { return basis_op(n, i, i); }

// ----------------------------- products and traces --------------------------

Matrix kron(const Matrix& a, const Matrix& b);

// Reduced state of the second qubit: (tr_first rho)[b,b'] = sum_a rho[(a,b),(a,b')].
Matrix partial_trace_first(const Matrix& rho);

// Reduced state of the first qubit: (tr_second rho)[a,a'] = sum_b rho[(a,b),(a',b)].
Matrix partial_trace_second(const Matrix& rho);

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

// ----------------------------- vectorization --------------------------------

// Column-stacking: vec(A rho B) = (B^T kron A) vec(rho).
Vector vectorize(const Matrix& m);
Matrix devectorize(const Vector& v);

// Superoperators for left/right multiplication in the column-stacking convention.
inline Matrix super_left(const Matrix& a) {
    return kron(Matrix::Identity(a.rows(), a.rows()), a);
}
inline Matrix super_right(const Matrix& b) {
    return kron(b.transpose(), Matrix::Identity(b.rows(), b.rows()));
}

// ----------------------------- spectra ---------------------------------------

// All eigenvalues of a general square complex matrix, with multiplicity.
// Throws on solver non-convergence.
Vector eigenvalues(const Matrix& m);

// ----------------------------- comparisons -----------------------------------

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    return (a - b).cwiseAbs().maxCoeff();
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

inline bool is_hermitian(const Matrix& a, double tol) {
    return a.rows() == a.cols() && max_abs_diff(a, Matrix(a.adjoint())) <= tol;
}

}  // namespace qtm::ops
