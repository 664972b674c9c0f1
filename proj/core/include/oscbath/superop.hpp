// superop.hpp — Truncated-Fock-space operator algebra: ladder and quadrature
// operators, commutator/anticommutator superoperators, interaction-picture
// rotations.
//
// Vectorization convention: column-major, vec(rho) stacks columns, so
// vec(A rho B) = (B^T kron A) vec(rho). All superoperator matrices act on
// column-vectorized density matrices under this convention.
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace oscbath {

using FockMatrix = Eigen::MatrixXcd;

// Complex N x N operator on the truncated oscillator space.
struct FockOperator {
    int dim = 0;
    FockMatrix entries;

    FockOperator() = default;
    FockOperator(int n, FockMatrix m);
};

// Complex N^2 x N^2 matrix acting on column-vectorized density matrices.
struct SuperOperator {
    int dim = 0;
    Eigen::MatrixXcd entries;

    SuperOperator() = default;
    SuperOperator(int n, Eigen::MatrixXcd m);

    // Apply to a density matrix (reshapes through the vectorization).
    FockMatrix apply(const FockMatrix& rho) const;
};

struct DensityMatrix {
    int dim = 0;
    FockMatrix entries;

    DensityMatrix() = default;
    DensityMatrix(int n, FockMatrix m);  // checks Hermiticity and unit trace

    double trace_error() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;
};

// Canonical matrices, <k|a|k+1> = sqrt(k+1).
FockOperator annihilation_op(int dim);
FockOperator creation_op(int dim);
FockOperator number_op(int dim);
FockOperator position_op(int dim);  // X = (a + a^dag)/sqrt(2)
FockOperator momentum_op(int dim);  // P = i (a^dag - a)/sqrt(2)
DensityMatrix vacuum_state(int dim);

// rho -> A rho - rho A, vectorized.
SuperOperator commutator_super(const FockOperator& A);
// rho -> A rho + rho A, vectorized.
SuperOperator anticommutator_super(const FockOperator& A);

// Interaction-picture quadratures:
//   X(t) = X cos(w0 t) + P sin(w0 t),  P(t) = P cos(w0 t) - X sin(w0 t).
struct RotatedQuadratures {
    FockOperator X_t;
    FockOperator P_t;
};
RotatedQuadratures rotate_quadratures(int dim, double t, double omega0);

}  // namespace oscbath
