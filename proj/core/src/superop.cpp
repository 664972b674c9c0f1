#include "oscbath/superop.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace oscbath {

namespace {
using cplx = std::complex<double>;

void check_dim(int dim) {
    if (dim < 2) throw std::invalid_argument("Fock dimension must be >= 2");
}
}  // namespace

FockOperator::FockOperator(int n, FockMatrix m) : dim(n), entries(std::move(m)) {
    check_dim(n);
    if (entries.rows() != n || entries.cols() != n) {
        throw std::invalid_argument("FockOperator: matrix must be dim x dim");
    }
}

SuperOperator::SuperOperator(int n, Eigen::MatrixXcd m)
    : dim(n), entries(std::move(m)) {
    check_dim(n);
    if (entries.rows() != static_cast<Eigen::Index>(n) * n ||
        entries.cols() != static_cast<Eigen::Index>(n) * n) {
        throw std::invalid_argument("SuperOperator: matrix must be dim^2 x dim^2");
    }
}

FockMatrix SuperOperator::apply(const FockMatrix& rho) const {
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("SuperOperator::apply: dimension mismatch");
    }
    const Eigen::Map<const Eigen::VectorXcd> v(rho.data(),
                                               static_cast<Eigen::Index>(dim) * dim);
    Eigen::VectorXcd res = entries * v;
    return Eigen::Map<FockMatrix>(res.data(), dim, dim);
}

DensityMatrix::DensityMatrix(int n, FockMatrix m) : dim(n), entries(std::move(m)) {
    check_dim(n);
    if (entries.rows() != n || entries.cols() != n) {
        throw std::invalid_argument("DensityMatrix: matrix must be dim x dim");
    }
    if (hermiticity_error() > 1e-12) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    }
    if (trace_error() > 1e-12) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond 1e-12");
    }
}

double DensityMatrix::trace_error() const {
    return std::abs(entries.trace() - cplx(1.0, 0.0));
}

double DensityMatrix::hermiticity_error() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<FockMatrix> es(
        0.5 * (entries + entries.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

FockOperator annihilation_op(int dim) {
    check_dim(dim);
    FockMatrix a = FockMatrix::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) a(k, k + 1) = std::sqrt(double(k + 1));
    return {dim, std::move(a)};
}

FockOperator creation_op(int dim) {
    FockOperator a = annihilation_op(dim);
    return {dim, a.entries.adjoint()};
}

FockOperator number_op(int dim) {
    check_dim(dim);
    FockMatrix n = FockMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return {dim, std::move(n)};
}

FockOperator position_op(int dim) {
    FockOperator a = annihilation_op(dim);
    return {dim, (a.entries + a.entries.adjoint()) / std::sqrt(2.0)};
}

FockOperator momentum_op(int dim) {
    FockOperator a = annihilation_op(dim);
    return {dim, cplx(0.0, 1.0) * (a.entries.adjoint() - a.entries) / std::sqrt(2.0)};
}

DensityMatrix vacuum_state(int dim) {
    check_dim(dim);
    FockMatrix rho = FockMatrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return {dim, std::move(rho)};
}

namespace {

// Left multiplication L_A = I kron A, right multiplication R_A = A^T kron I
// under column-major vectorization.
Eigen::MatrixXcd left_mult(const FockMatrix& A) {
    const Eigen::Index n = A.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.block(j * n, j * n, n, n) = A;
    }
    return out;
}

Eigen::MatrixXcd right_mult(const FockMatrix& A) {
    const Eigen::Index n = A.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            // (A^T kron I) block (i, j) = A(j, i) * I
            if (A(j, i) != cplx(0.0, 0.0)) {
                out.block(i * n, j * n, n, n).diagonal().setConstant(A(j, i));
            }
        }
    }
    return out;
}

}  // namespace

SuperOperator commutator_super(const FockOperator& A) {
    if (A.entries.rows() != A.entries.cols()) {
        throw std::invalid_argument("commutator_super: operator must be square");
    }
    return {A.dim, left_mult(A.entries) - right_mult(A.entries)};
}

SuperOperator anticommutator_super(const FockOperator& A) {
    if (A.entries.rows() != A.entries.cols()) {
        throw std::invalid_argument("anticommutator_super: operator must be square");
    }
    return {A.dim, left_mult(A.entries) + right_mult(A.entries)};
}

RotatedQuadratures rotate_quadratures(int dim, double t, double omega0) {
    const FockOperator X = position_op(dim);
    const FockOperator P = momentum_op(dim);
    const double c = std::cos(omega0 * t);
    const double s = std::sin(omega0 * t);
    return {FockOperator(dim, c * X.entries + s * P.entries),
            FockOperator(dim, c * P.entries - s * X.entries)};
}

}  // namespace oscbath
