#include "oscbath/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "oscbath/csvio.hpp"
#include "oscbath/errors.hpp"
#include "oscbath/ode.hpp"

namespace oscbath {

namespace {
using cplx = std::complex<double>;
}

const char* model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::FV: return "fv";
        case ModelKind::FV_RWA: return "fv_rwa";
        case ModelKind::RW: return "rw";
    }
    return "?";
}

void MomentState::validate(double tol) const {
    if (!(sxx > 0.0) || !(spp > 0.0)) {
        throw std::invalid_argument("MomentState: sxx and spp must be positive");
    }
    if (sxx * spp - sxp * sxp < 0.25 - tol) {
        throw std::invalid_argument("MomentState: uncertainty product below 1/4");
    }
}

namespace {

// rho -> A rho B as a vectorized matrix (B^T kron A, column-major vec).
Eigen::MatrixXcd sandwich(const FockMatrix& A, const FockMatrix& B) {
    const Eigen::Index n = A.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (B(i, j) != cplx(0, 0)) {
                out.block(j * n, i * n, n, n) += B(i, j) * A;
            }
        }
    }
    return out;
}

void check_grid_in_table(const CoefficientTable& table,
                         const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("evolve: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("evolve: grid must be strictly increasing");
        }
    }
    if (grid.front() < table.t_min() || grid.back() > table.t_max()) {
        throw RangeError("evolve: grid outside tabulated coefficient range");
    }
}

}  // namespace

SuperOperator build_liouvillian(ModelKind kind, const CoefficientTable& table,
                                double t, int dim) {
    if (dim < 2) throw std::invalid_argument("build_liouvillian: dim must be >= 2");
    if (t < table.t_min() || t > table.t_max()) {
        throw RangeError("build_liouvillian: t outside table range");
    }
    const Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;

    if (kind == ModelKind::FV) {
        const FvCoefficients c = table.fv_at(t);
        const auto [X_t, P_t] = rotate_quadratures(dim, t, table.omega0());
        const SuperOperator Xs = commutator_super(X_t);
        const SuperOperator Ps = commutator_super(P_t);
        const SuperOperator Psig = anticommutator_super(P_t);
        Eigen::MatrixXcd L = -(c.delta * (Xs.entries * Xs.entries) -
                               c.pi * (Xs.entries * Ps.entries) +
                               cplx(0, 1) * c.gamma * (Xs.entries * Psig.entries));
        return {dim, std::move(L)};
    }

    double gd = 0.0, gu = 0.0;
    if (kind == ModelKind::FV_RWA) {
        const FvCoefficients c = table.fv_at(t);
        gd = c.delta + c.gamma;
        gu = c.delta - c.gamma;
    } else {
        const RwaCoefficients c = table.rwa_at(t);
        gd = c.delta + c.gamma;
        gu = c.delta - c.gamma;
    }
    const FockMatrix a = annihilation_op(dim).entries;
    const FockMatrix ad = a.adjoint();
    const FockMatrix I = FockMatrix::Identity(dim, dim);
    const FockMatrix nn = ad * a;
    const FockMatrix aad = a * ad;
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n2, n2);
    // down: a rho a+ - 1/2 {a+ a, rho}; up: a+ rho a - 1/2 {a a+, rho}
    L += gd * (sandwich(a, ad) - 0.5 * sandwich(nn, I) - 0.5 * sandwich(I, nn));
    L += gu * (sandwich(ad, a) - 0.5 * sandwich(aad, I) - 0.5 * sandwich(I, aad));
    return {dim, std::move(L)};
}

// ---------------------------------------------------------------------------
// Density-matrix path
// ---------------------------------------------------------------------------

namespace {

// Matrix-free application of the model generator to rho.
class GeneratorAction {
public:
    GeneratorAction(ModelKind kind, const CoefficientTable& table, int dim)
        : kind_(kind), table_(&table), dim_(dim) {
        const FockMatrix a = annihilation_op(dim).entries;
        a_ = a;
        ad_ = a.adjoint();
        X_ = position_op(dim).entries;
        P_ = momentum_op(dim).entries;
        // diagonals of a+a and a a+ in the truncated space; the a a+ corner
        // entry is 0, not N, which keeps the truncated generator traceless
        n_diag_.resize(dim);
        aad_diag_.resize(dim);
        for (int k = 0; k < dim; ++k) {
            n_diag_[static_cast<std::size_t>(k)] = double(k);
            aad_diag_[static_cast<std::size_t>(k)] = (k + 1 < dim) ? double(k + 1) : 0.0;
        }
    }

    void operator()(double t, const FockMatrix& rho, FockMatrix& out) const {
        if (kind_ == ModelKind::FV) {
            const FvCoefficients c = table_->fv_at(t);
            const double cw = std::cos(table_->omega0() * t);
            const double sw = std::sin(table_->omega0() * t);
            const FockMatrix Xt = cw * X_ + sw * P_;
            const FockMatrix Pt = cw * P_ - sw * X_;
            // L rho = -[Xt, B rho - rho C], with
            //   B = delta Xt + (i gamma - pi) Pt, C = delta Xt - (i gamma + pi) Pt
            const FockMatrix B = c.delta * Xt + (cplx(0, 1) * c.gamma - c.pi) * Pt;
            const FockMatrix C = c.delta * Xt - (cplx(0, 1) * c.gamma + c.pi) * Pt;
            const FockMatrix Q = B * rho - rho * C;
            out.noalias() = Q * Xt;
            out.noalias() -= Xt * Q;
            return;
        }
        double gd = 0.0, gu = 0.0;
        if (kind_ == ModelKind::FV_RWA) {
            const FvCoefficients c = table_->fv_at(t);
            gd = c.delta + c.gamma;
            gu = c.delta - c.gamma;
        } else {
            const RwaCoefficients c = table_->rwa_at(t);
            gd = c.delta + c.gamma;
            gu = c.delta - c.gamma;
        }
        // gd (a rho a+ - 1/2{a+a, rho}) + gu (a+ rho a - 1/2{a a+, rho});
        // both anticommutators are diagonal scalings.
        out.noalias() = gd * (a_ * rho * ad_);
        out.noalias() += gu * (ad_ * rho * a_);
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) {
                const double ni = n_diag_[static_cast<std::size_t>(i)];
                const double nj = n_diag_[static_cast<std::size_t>(j)];
                const double mi = aad_diag_[static_cast<std::size_t>(i)];
                const double mj = aad_diag_[static_cast<std::size_t>(j)];
                out(i, j) -= 0.5 * (gd * (ni + nj) + gu * (mi + mj)) * rho(i, j);
            }
        }
    }

    const FockMatrix& X() const { return X_; }
    const FockMatrix& P() const { return P_; }

private:
    ModelKind kind_;
    const CoefficientTable* table_;
    int dim_;
    FockMatrix a_, ad_, X_, P_;
    std::vector<double> n_diag_, aad_diag_;
};

struct Observables {
    double n, vx, vp, cxp;
};

Observables measure(const FockMatrix& rho, const FockMatrix& X,
                    const FockMatrix& P) {
    // <n> directly as tr(a+a rho); the quadrature route (X^2+P^2-1)/2 differs
    // at the truncation corner where a a+ loses its last diagonal entry.
    double n = 0.0;
    for (Eigen::Index k = 0; k < rho.rows(); ++k) {
        n += double(k) * rho(k, k).real();
    }
    const double mx = (X * rho).trace().real();
    const double mp = (P * rho).trace().real();
    const double x2 = (X * X * rho).trace().real();
    const double p2 = (P * P * rho).trace().real();
    const double xp = 0.5 * ((X * P + P * X) * rho).trace().real();
    return {n, x2 - mx * mx, p2 - mp * mp, xp - mx * mp};
}

}  // namespace

Trajectory evolve_density(ModelKind kind, const CoefficientTable& table,
                          const DensityMatrix& rho0,
                          const std::vector<double>& grid,
                          const EvolveSettings& settings) {
    check_grid_in_table(table, grid);
    const int dim = rho0.dim;
    const GeneratorAction gen(kind, table, dim);
    const Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;

    Trajectory traj;
    const std::size_t npts = grid.size();
    traj.times = grid;
    traj.n_mean.reserve(npts);
    traj.var_x.reserve(npts);
    traj.var_p.reserve(npts);
    traj.cov_xp.reserve(npts);
    traj.trace_err.reserve(npts);
    traj.herm_err.reserve(npts);
    traj.min_eig.reserve(npts);

    Eigen::VectorXcd y(n2);
    Eigen::Map<FockMatrix>(y.data(), dim, dim) = rho0.entries;

    double max_trace = 0.0, max_herm = 0.0;
    FockMatrix rho_buf(dim, dim), drho_buf(dim, dim);

    auto rhs = [&](double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
        const Eigen::Map<const FockMatrix> rho(v.data(), dim, dim);
        Eigen::Map<FockMatrix> drho(dv.data(), dim, dim);
        rho_buf = rho;
        gen(t, rho_buf, drho_buf);
        drho = drho_buf;
    };

    auto on_accept = [&](double /*t*/, Eigen::VectorXcd& v, double /*h*/) {
        Eigen::Map<FockMatrix> rho(v.data(), dim, dim);
        const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        max_herm = std::max(max_herm, herm);
        rho_buf = 0.5 * (rho + rho.adjoint());
        const double tr = rho_buf.trace().real();
        max_trace = std::max(max_trace, std::abs(tr - 1.0));
        rho = rho_buf / tr;
        const double tail = rho(dim - 1, dim - 1).real() + rho(dim - 2, dim - 2).real();
        if (tail > settings.tail_tol) {
            throw TruncationError(
                "evolve_density: Fock tail population " + std::to_string(tail) +
                " exceeds tail_tol; rerun with a larger fock_dim");
        }
    };

    OdeSettings odeset;
    odeset.rel_tol = settings.rk_tol;
    odeset.abs_tol = settings.abs_tol;

    double t = grid.front();
    Eigen::SelfAdjointEigenSolver<FockMatrix> es;
    for (std::size_t k = 0; k < npts; ++k) {
        if (grid[k] > t) {
            integrate_adaptive(rhs, t, y, grid[k], odeset, on_accept);
        }
        const Eigen::Map<const FockMatrix> rho(y.data(), dim, dim);
        const Observables obs = measure(rho, gen.X(), gen.P());
        traj.n_mean.push_back(obs.n);
        traj.var_x.push_back(obs.vx);
        traj.var_p.push_back(obs.vp);
        traj.cov_xp.push_back(obs.cxp);
        traj.trace_err.push_back(max_trace);
        traj.herm_err.push_back(max_herm);
        es.compute(rho, Eigen::EigenvaluesOnly);
        traj.min_eig.push_back(es.eigenvalues().minCoeff());
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Moment path
// ---------------------------------------------------------------------------

Trajectory evolve_moments(ModelKind kind, const CoefficientTable& table,
                          const MomentState& m0, const std::vector<double>& grid,
                          const EvolveSettings& settings) {
    check_grid_in_table(table, grid);
    m0.validate();
    const double w0 = table.omega0();

    auto rhs = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        const double mx = y[0], mp = y[1], sxx = y[2], spp = y[3], sxp = y[4];
        if (kind == ModelKind::FV) {
            const FvCoefficients c = table.fv_at(t);
            const double cw = std::cos(w0 * t), sw = std::sin(w0 * t);
            const double pt = cw * mp - sw * mx;  // <P(t)>
            dy[0] = 2.0 * c.gamma * sw * pt;
            dy[1] = -2.0 * c.gamma * cw * pt;
            dy[2] = 2.0 * c.delta * sw * sw - 2.0 * c.pi * sw * cw +
                    4.0 * c.gamma * sw * cw * sxp - 4.0 * c.gamma * sw * sw * sxx;
            dy[3] = 2.0 * c.delta * cw * cw + 2.0 * c.pi * sw * cw -
                    4.0 * c.gamma * cw * cw * spp + 4.0 * c.gamma * sw * cw * sxp;
            dy[4] = -2.0 * c.delta * sw * cw + c.pi * (cw * cw - sw * sw) +
                    2.0 * c.gamma * sw * cw * (sxx + spp) - 2.0 * c.gamma * sxp;
            return;
        }
        double delta = 0.0, gamma = 0.0;
        if (kind == ModelKind::FV_RWA) {
            const FvCoefficients c = table.fv_at(t);
            delta = c.delta;
            gamma = c.gamma;
        } else {
            const RwaCoefficients c = table.rwa_at(t);
            delta = c.delta;
            gamma = c.gamma;
        }
        dy[0] = -gamma * mx;
        dy[1] = -gamma * mp;
        dy[2] = -2.0 * gamma * sxx + delta;
        dy[3] = -2.0 * gamma * spp + delta;
        dy[4] = -2.0 * gamma * sxp;
    };

    Trajectory traj;
    traj.times = grid;
    Eigen::VectorXd y(5);
    y << m0.mean_x, m0.mean_p, m0.sxx, m0.spp, m0.sxp;

    OdeSettings odeset;
    odeset.rel_tol = settings.rk_tol;
    odeset.abs_tol = std::min(settings.abs_tol, 1e-14);

    double t = grid.front();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] > t) {
            integrate_adaptive(rhs, t, y, grid[k], odeset,
                               [](double, Eigen::VectorXd&, double) {});
        }
        const double mx = y[0], mp = y[1], sxx = y[2], spp = y[3], sxp = y[4];
        traj.n_mean.push_back(0.5 * (sxx + spp - 1.0) + 0.5 * (mx * mx + mp * mp));
        traj.var_x.push_back(sxx);
        traj.var_p.push_back(spp);
        traj.cov_xp.push_back(sxp);
        traj.trace_err.push_back(0.0);
        traj.herm_err.push_back(0.0);
        const double det = sxx * spp - sxp * sxp;
        traj.min_eig.push_back(std::sqrt(std::max(det, 0.0)) - 0.5);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Fits and report
// ---------------------------------------------------------------------------

double fit_quadratic_coefficient(const Trajectory& traj, double t_lo,
                                 double t_hi, int* points_used) {
    double num = 0.0, den = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        if (t < t_lo || t > t_hi) continue;
        const double t2 = t * t;
        num += traj.n_mean[k] * t2;
        den += t2 * t2;
        ++count;
    }
    if (points_used) *points_used = count;
    if (count < 8) {
        throw FitError("fit_quadratic_coefficient: fewer than 8 points in window");
    }
    return 2.0 * num / den;
}

void fit_exponential_tail(const Trajectory& traj, double* rate, double* asym,
                          double* window_lo, double* window_hi,
                          int* points_used) {
    const std::size_t n = traj.times.size();
    const std::size_t k0 = (2 * n) / 3;
    if (n < 12 || n - k0 < 9) {
        throw FitError("fit_exponential_tail: fewer than 8 tail intervals");
    }
    const double h = traj.times[k0 + 1] - traj.times[k0];
    for (std::size_t k = k0; k + 1 < n; ++k) {
        const double hk = traj.times[k + 1] - traj.times[k];
        if (std::abs(hk - h) > 1e-6 * h) {
            throw FitError("fit_exponential_tail: tail grid is not uniform");
        }
    }
    // Autoregression n_{k+1} = a + q n_k; rate = -ln q / h, asym = a/(1-q).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t k = k0; k + 1 < n; ++k) {
        const double x = traj.n_mean[k], y = traj.n_mean[k + 1];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    const double det = m * sxx - sx * sx;
    if (!(std::abs(det) > 1e-30 * (1.0 + sxx * m))) {
        throw FitError("fit_exponential_tail: degenerate tail data");
    }
    const double q = (m * sxy - sx * sy) / det;
    const double a = (sy - q * sx) / m;
    if (!(q > 0.0) || !(q < 1.0)) {
        throw FitError("fit_exponential_tail: tail is not a decaying exponential");
    }
    if (rate) *rate = -std::log(q) / h;
    if (asym) *asym = a / (1.0 - q);
    if (window_lo) *window_lo = traj.times[k0];
    if (window_hi) *window_hi = traj.times[n - 1];
    if (points_used) *points_used = m + 1;
}

double fit_loglog_slope(const std::vector<double>& t,
                        const std::vector<double>& v, double t_lo, double t_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < t_lo || t[k] > t_hi) continue;
        if (!(std::abs(v[k]) > 0.0)) continue;
        const double x = std::log(t[k]);
        const double y = std::log(std::abs(v[k]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 4) throw FitError("fit_loglog_slope: fewer than 4 usable points");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ComparisonReport heating_report(const Trajectory& traj_fv,
                                const Trajectory& traj_rw, double omega_c) {
    if (traj_fv.times.size() != traj_rw.times.size()) {
        throw std::invalid_argument("heating_report: grids are not congruent");
    }
    for (std::size_t k = 0; k < traj_fv.times.size(); ++k) {
        if (traj_fv.times[k] != traj_rw.times[k]) {
            throw std::invalid_argument("heating_report: grids are not congruent");
        }
    }
    ComparisonReport rep;
    rep.short_window_lo = 0.002 / omega_c;
    rep.short_window_hi = 0.02 / omega_c;
    int used = 0;
    rep.quad_coeff_fv = fit_quadratic_coefficient(traj_fv, rep.short_window_lo,
                                                  rep.short_window_hi, &used);
    rep.short_window_points = used;
    rep.quad_coeff_rw = fit_quadratic_coefficient(traj_rw, rep.short_window_lo,
                                                  rep.short_window_hi, nullptr);
    rep.short_ratio = rep.quad_coeff_fv / rep.quad_coeff_rw;
    fit_exponential_tail(traj_fv, &rep.rate_fv, &rep.asym_fv, &rep.long_window_lo,
                         &rep.long_window_hi, &rep.long_window_points);
    fit_exponential_tail(traj_rw, &rep.rate_rw, &rep.asym_rw, nullptr, nullptr,
                         nullptr);
    return rep;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    os << "t,n_mean,var_x,var_p,cov_xp,trace_err,herm_err,min_eig\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        put_double(os, traj.times[k]);
        for (const auto* col : {&traj.n_mean, &traj.var_x, &traj.var_p,
                                &traj.cov_xp, &traj.trace_err, &traj.herm_err,
                                &traj.min_eig}) {
            os.put(',');
            put_double(os, (*col)[k]);
        }
        os.put('\n');
    }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_trajectory_csv(traj, os);
}

void write_report(const ComparisonReport& r, std::ostream& os) {
    auto line = [&](const char* key, double v) {
        os << key << '=';
        put_double(os, v);
        os.put('\n');
    };
    line("quad_coeff_fv", r.quad_coeff_fv);
    line("quad_coeff_rw", r.quad_coeff_rw);
    line("short_ratio", r.short_ratio);
    line("rate_fv", r.rate_fv);
    line("asym_fv", r.asym_fv);
    line("rate_rw", r.rate_rw);
    line("asym_rw", r.asym_rw);
    line("short_window_lo", r.short_window_lo);
    line("short_window_hi", r.short_window_hi);
    os << "short_window_points=" << r.short_window_points << '\n';
    line("long_window_lo", r.long_window_lo);
    line("long_window_hi", r.long_window_hi);
    os << "long_window_points=" << r.long_window_points << '\n';
}

}  // namespace oscbath
