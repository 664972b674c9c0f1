#include "oscbath/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "oscbath/errors.hpp"

namespace oscbath {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double OracleBath::kappa_discrete(double alpha, double tau) const {
    double sum = 0.0;
    for (const Mode& m : modes) {
        double n = 0.0;
        if (theta > 0.0) n = thermal_occupation(theta, m.omega);
        sum += m.omega * m.weight * m.weight * (n + 0.5) * std::cos(m.omega * tau);
    }
    return 2.0 * alpha * alpha * sum;
}

OracleBath discretize(const BathSpec& spec, int n_modes, double omega_max) {
    spec.validate();
    if (n_modes < 2) throw std::invalid_argument("discretize: n_modes must be >= 2");
    if (!(omega_max > 0.0)) throw std::invalid_argument("discretize: omega_max must be > 0");

    OracleBath bath;
    bath.theta = spec.theta;
    bath.band_lo = 0.0;
    bath.band_hi = omega_max;
    const double dw = omega_max / n_modes;
    bath.recurrence_time = kTwoPi / dw;
    bath.modes.reserve(static_cast<std::size_t>(n_modes));
    for (int i = 0; i < n_modes; ++i) {
        const double w = (i + 0.5) * dw;
        const double g2 = spectral_density(spec.spectral, w) * dw;
        bath.modes.push_back({w, std::sqrt(g2)});
    }
    return bath;
}

GaussianState initial_state(const OracleBath& bath) {
    const Eigen::Index n = 2 * (static_cast<Eigen::Index>(bath.modes.size()) + 1);
    GaussianState st;
    st.mean = Eigen::VectorXd::Zero(n);
    st.cov = Eigen::MatrixXd::Zero(n, n);
    st.cov(0, 0) = st.cov(1, 1) = 0.5;
    for (std::size_t k = 0; k < bath.modes.size(); ++k) {
        double occ = 0.0;
        if (bath.theta > 0.0) occ = thermal_occupation(bath.theta, bath.modes[k].omega);
        const Eigen::Index i = 2 * (static_cast<Eigen::Index>(k) + 1);
        st.cov(i, i) = st.cov(i + 1, i + 1) = occ + 0.5;
    }
    return st;
}

namespace {

// Quadratic form H = (1/2) R^T M R over R = (X0, P0, X1, P1, ...).
Eigen::MatrixXd hamiltonian_matrix(ModelKind kind, const OracleBath& bath,
                                   double alpha, double omega0) {
    const Eigen::Index nm = static_cast<Eigen::Index>(bath.modes.size());
    const Eigen::Index n = 2 * (nm + 1);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    M(0, 0) = M(1, 1) = omega0;
    for (Eigen::Index k = 0; k < nm; ++k) {
        const auto& mode = bath.modes[static_cast<std::size_t>(k)];
        M(2 + 2 * k, 2 + 2 * k) = M(3 + 2 * k, 3 + 2 * k) = mode.omega;
        if (kind == ModelKind::FV) {
            // alpha X sum_i sqrt(2 w_i) g_i X_i
            const double c = alpha * std::sqrt(2.0 * mode.omega) * mode.weight;
            M(0, 2 + 2 * k) = M(2 + 2 * k, 0) = c;
        } else {
            // alpha sum_i sqrt(w_i/2) g_i (a b_i+ + a+ b_i) = d_i (X X_i + P P_i)
            const double d = alpha * std::sqrt(0.5 * mode.omega) * mode.weight;
            M(0, 2 + 2 * k) = M(2 + 2 * k, 0) = d;
            M(1, 3 + 2 * k) = M(3 + 2 * k, 1) = d;
        }
    }
    return M;
}

Eigen::MatrixXd symplectic_form(Eigen::Index pairs) {
    Eigen::MatrixXd Om = Eigen::MatrixXd::Zero(2 * pairs, 2 * pairs);
    for (Eigen::Index k = 0; k < pairs; ++k) {
        Om(2 * k, 2 * k + 1) = 1.0;
        Om(2 * k + 1, 2 * k) = -1.0;
    }
    return Om;
}

}  // namespace

Trajectory exact_evolution(ModelKind kind, const OracleBath& bath, double alpha,
                           double omega0, const std::vector<double>& grid,
                           OracleDiagnostics* diag) {
    if (kind == ModelKind::FV_RWA) {
        throw std::invalid_argument("exact_evolution: FV_RWA has no microscopic Hamiltonian");
    }
    if (grid.size() < 2) throw std::invalid_argument("exact_evolution: need >= 2 grid points");
    if (grid.front() != 0.0) throw std::invalid_argument("exact_evolution: grid must start at 0");
    const double dt = grid[1] - grid[0];
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double h = grid[k] - grid[k - 1];
        if (!(h > 0.0) || std::abs(h - dt) > 1e-9 * dt) {
            throw std::invalid_argument("exact_evolution: grid must be uniform");
        }
    }
    if (grid.back() >= bath.recurrence_time) {
        throw RecurrenceError(
            "exact_evolution: simulation window reaches the recurrence horizon "
            "2 pi / dOmega; use more modes or a shorter window");
    }

    const Eigen::Index pairs = static_cast<Eigen::Index>(bath.modes.size()) + 1;
    const Eigen::MatrixXd M = hamiltonian_matrix(kind, bath, alpha, omega0);
    const Eigen::MatrixXd Om = symplectic_form(pairs);
    const GaussianState init = initial_state(bath);

    // Physicality of the initial covariance: all mode occupations >= vacuum.
    for (Eigen::Index i = 0; i < 2 * pairs; ++i) {
        if (init.cov(i, i) < 0.5 - 1e-12) {
            throw std::invalid_argument("exact_evolution: non-physical initial covariance");
        }
    }

    const Eigen::MatrixXd A = Om * M;
    const Eigen::MatrixXd S = (A * dt).exp();

    if (diag) {
        diag->symplectic_error = (S.transpose() * Om * S - Om).cwiseAbs().maxCoeff();
    }
    const double E0 = 0.5 * (M * init.cov).trace();

    // Only the system 2x2 block of cov(t) = S(t) cov0 S(t)^T is observed;
    // track the top two rows of S(t) and advance S(t) by one gemm per step.
    Eigen::MatrixXd St = Eigen::MatrixXd::Identity(2 * pairs, 2 * pairs);

    Trajectory traj;
    traj.times = grid;
    const std::size_t npts = grid.size();
    traj.n_mean.reserve(npts);
    traj.var_x.reserve(npts);
    traj.var_p.reserve(npts);
    traj.cov_xp.reserve(npts);

    for (std::size_t k = 0; k < npts; ++k) {
        if (k > 0) St = S * St;
        const Eigen::MatrixXd rows = St.topRows(2);           // 2 x n
        const Eigen::Matrix2d sys = rows * init.cov * rows.transpose();
        traj.var_x.push_back(sys(0, 0));
        traj.var_p.push_back(sys(1, 1));
        traj.cov_xp.push_back(0.5 * (sys(0, 1) + sys(1, 0)));
        traj.n_mean.push_back(0.5 * (sys(0, 0) + sys(1, 1) - 1.0));
        traj.trace_err.push_back(0.0);
        traj.herm_err.push_back(0.0);
        const double det = sys(0, 0) * sys(1, 1) - sys(0, 1) * sys(1, 0);
        traj.min_eig.push_back(std::sqrt(std::max(det, 0.0)) - 0.5);
    }

    if (diag) {
        const Eigen::MatrixXd covT = St * init.cov * St.transpose();
        const double ET = 0.5 * (M * covT).trace();
        diag->energy_rel_drift = std::abs(ET - E0) / std::abs(E0);
    }
    return traj;
}

}  // namespace oscbath
