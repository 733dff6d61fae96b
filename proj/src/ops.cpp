#include "qtm/ops.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace qtm::ops {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    out = Eigen::kroneckerProduct(a, b);
    return out;
}

Matrix partial_trace_first(const Matrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("partial_trace_first: expected a 4x4 matrix");
    Matrix out = Matrix::Zero(2, 2);
    for (Eigen::Index b = 0; b < 2; ++b)
        for (Eigen::Index bp = 0; bp < 2; ++bp)
            out(b, bp) = rho(b, bp) + rho(2 + b, 2 + bp);
    return out;
}

Matrix partial_trace_second(const Matrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("partial_trace_second: expected a 4x4 matrix");
    Matrix out = Matrix::Zero(2, 2);
    for (Eigen::Index a = 0; a < 2; ++a)
        for (Eigen::Index ap = 0; ap < 2; ++ap)
            out(a, ap) = rho(2 * a, 2 * ap) + rho(2 * a + 1, 2 * ap + 1);
    return out;
}

Vector vectorize(const Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("vectorize: expected a square matrix");
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix devectorize(const Vector& v) {
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (n * n != v.size())
        throw std::invalid_argument("devectorize: length is not a perfect square");
    return Eigen::Map<const Matrix>(v.data(), n, n);
}

Vector eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("eigenvalues: expected a square matrix");
    Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues: solver did not converge");
    return solver.eigenvalues();
}

}  // namespace qtm::ops
