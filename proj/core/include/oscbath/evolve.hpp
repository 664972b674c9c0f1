// evolve.hpp — The three time-dependent Liouvillians, density-matrix and
// second-moment integration, observable extraction, heating-function fits.
//
// Both master equations are integrated in the interaction picture; <n>, the
// symmetric variances, and all reported observables are picture-invariant
// for this Hamiltonian. The frequency-renormalization coefficients r(t),
// r^RWA(t) are diagnostics and never enter any Liouvillian.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oscbath/coeffs.hpp"
#include "oscbath/superop.hpp"

namespace oscbath {

enum class ModelKind { FV, FV_RWA, RW };

const char* model_name(ModelKind kind);

struct Trajectory {
    std::vector<double> times;
    std::vector<double> n_mean;
    std::vector<double> var_x, var_p, cov_xp;
    // Running maxima of the per-step pre-correction defects up to each grid
    // point (zero for the exact moment/covariance paths).
    std::vector<double> trace_err, herm_err;
    // Density path: smallest eigenvalue of rho. Moment paths: physicality
    // margin nu - 1/2 of the covariance (same sign convention).
    std::vector<double> min_eig;
};

struct MomentState {
    double mean_x = 0.0, mean_p = 0.0;
    double sxx = 0.5, spp = 0.5, sxp = 0.0;

    void validate(double tol = 1e-9) const;
};

struct EvolveSettings {
    double rk_tol = 1e-9;    // relative tolerance of the embedded RK pair
    double abs_tol = 1e-12;
    double tail_tol = 1e-8;  // allowed population in the last two Fock levels
};

// Explicit superoperator of the chosen model at time t (table-interpolated
// coefficients). Intended for verification at small dimension; the
// integrators apply the same generator matrix-free.
SuperOperator build_liouvillian(ModelKind kind, const CoefficientTable& table,
                                double t, int dim);

Trajectory evolve_density(ModelKind kind, const CoefficientTable& table,
                          const DensityMatrix& rho0,
                          const std::vector<double>& grid,
                          const EvolveSettings& settings = {});

Trajectory evolve_moments(ModelKind kind, const CoefficientTable& table,
                          const MomentState& m0, const std::vector<double>& grid,
                          const EvolveSettings& settings = {});

// Short-time quadratic and long-time exponential fits of a pair of heating
// functions on congruent grids.
//   n(t) ~ quad_coeff * t^2/2          over t in [0.002, 0.02]/omega_c
//   n(t) ~ asym - (asym - n0) e^{-rate t}   over the final third of the grid
struct ComparisonReport {
    double quad_coeff_fv = 0.0;
    double quad_coeff_rw = 0.0;
    double short_ratio = 0.0;  // quad_coeff_fv / quad_coeff_rw
    double rate_fv = 0.0, asym_fv = 0.0;
    double rate_rw = 0.0, asym_rw = 0.0;
    double short_window_lo = 0.0, short_window_hi = 0.0;
    int short_window_points = 0;
    double long_window_lo = 0.0, long_window_hi = 0.0;
    int long_window_points = 0;
};

ComparisonReport heating_report(const Trajectory& traj_fv,
                                const Trajectory& traj_rw, double omega_c);

// Individual fit helpers (exposed for reports over other windows).
double fit_quadratic_coefficient(const Trajectory& traj, double t_lo,
                                 double t_hi, int* points_used = nullptr);
void fit_exponential_tail(const Trajectory& traj, double* rate, double* asym,
                          double* window_lo = nullptr,
                          double* window_hi = nullptr,
                          int* points_used = nullptr);

// Log-log slope of column values over a time window (used for the
// short-time coefficient exponent checks).
double fit_loglog_slope(const std::vector<double>& t,
                        const std::vector<double>& v, double t_lo, double t_hi);

// Trajectory CSV, header: t,n_mean,var_x,var_p,cov_xp,trace_err,herm_err,min_eig
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

// ComparisonReport as a key=value text document.
void write_report(const ComparisonReport& report, std::ostream& os);

}  // namespace oscbath
