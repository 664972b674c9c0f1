// oracle.hpp — Exact finite-bath reference: the full microscopic FV / RW
// Hamiltonians with N discretized modes, evolved through Gaussian
// covariance-matrix dynamics. Model-free check of the weak-coupling master
// equations.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "oscbath/bath.hpp"
#include "oscbath/evolve.hpp"

namespace oscbath {

struct OracleBath {
    struct Mode {
        double omega;   // mode frequency
        double weight;  // g_i, with g_i^2 = |g(omega_i)|^2 * dOmega
    };
    std::vector<Mode> modes;
    double theta = 0.0;
    double band_lo = 0.0, band_hi = 0.0;
    double recurrence_time = 0.0;  // 2 pi / dOmega

    // Discrete cosine-sum kernel 2 a^2 sum_i w_i g_i^2 (n_i + 1/2) cos(w_i tau);
    // matches the continuum kappa of a band-limited density.
    double kappa_discrete(double alpha, double tau) const;
};

// Midpoint discretization of the band (0, omega_max]: linear mode spacing,
// g_i^2 = |g(omega_i)|^2 dOmega.
OracleBath discretize(const BathSpec& spec, int n_modes, double omega_max);

// Mean vector and symmetric covariance over (X, P) quadratures,
// system first, then one pair per bath mode.
struct GaussianState {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

GaussianState initial_state(const OracleBath& bath);  // vacuum x thermal

struct OracleDiagnostics {
    double symplectic_error = 0.0;    // ||S^T Omega S - Omega||_max of the stepper
    double energy_rel_drift = 0.0;    // |E(T) - E(0)| / |E(0)|
};

// Exact evolution of <n>(t) (system vacuum x bath thermal initial state)
// under the quadratic FV or RW Hamiltonian, by symplectic matrix-exponential
// propagation. Grid must be uniformly spaced, within the recurrence horizon.
// FV and RW only (FV_RWA has no microscopic Hamiltonian of its own).
Trajectory exact_evolution(ModelKind kind, const OracleBath& bath, double alpha,
                           double omega0, const std::vector<double>& grid,
                           OracleDiagnostics* diag = nullptr);

}  // namespace oscbath
