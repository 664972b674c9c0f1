// Acceptance suite: end-to-end checks of the paper-level predictions at desk
// scale. Prints one PASS/FAIL line per criterion and exits nonzero if any
// criterion fails.
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oscbath/config.hpp"
#include "oscbath/coeffs.hpp"
#include "oscbath/evolve.hpp"
#include "oscbath/gauss.hpp"
#include "oscbath/oracle.hpp"
#include "oscbath/superop.hpp"

using namespace oscbath;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    if (!pass) ++g_failures;
}

void info(const std::string& line) { std::printf("       %s\n", line.c_str()); }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

BathSpec drude_spec(double alpha, double theta) {
    return {alpha, theta, {SpectralKind::drude, 1.0, {}}};
}
BathSpec hard_spec(double alpha, double theta) {
    return {alpha, theta, {SpectralKind::drude_hard, 1.0, 10.0}};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / double(n - 1));
    return g;
}

std::vector<double> logspace0(double lo, double hi, int n) {
    std::vector<double> g{0.0};
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
    return g;
}

std::vector<double> log_plus_uniform(double lo, double mid, double hi, double h) {
    std::vector<double> g = logspace0(lo, mid, 25);
    for (double t = mid + h; t < hi + 0.5 * h; t += h) g.push_back(t);
    return g;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    // drude, wc = w0, theta = w0: delta/delta_rwa in [1.9, 2.1] for t <= 0.02
    const BathSpec spec = drude_spec(0.1, 1.0);
    const auto grid = logspace0(2e-4, 0.02, 25);
    const CoefficientTable table = tabulate(spec, 1.0, grid);
    double worst = 2.0, worst_t = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double ratio = table.delta_fv()[k] / table.delta_rwa()[k];
        if (std::abs(ratio - 2.0) > std::abs(worst - 2.0)) {
            worst = ratio;
            worst_t = grid[k];
        }
    }
    const bool pass = worst >= 1.9 && worst <= 2.1;
    report(1, pass,
           fmt("short-time delta/delta_rwa ratio in [1.9, 2.1]; worst %.4f at t=%.2e",
               worst, worst_t));
}

void criterion_2() {
    const auto grid = logspace0(1e-3, 1e-2, 13);
    const CoefficientTable hard = tabulate(hard_spec(0.1, 1.0), 1.0, grid);
    const double s_gamma = fit_loglog_slope(hard.grid(), hard.gamma_fv(), 1e-3, 1e-2);
    const double s_rwa = fit_loglog_slope(hard.grid(), hard.gamma_rwa(), 1e-3, 1e-2);
    const bool pass = std::abs(s_gamma - 3.0) <= 0.1 && std::abs(s_rwa - 1.0) <= 0.05;
    report(2, pass,
           fmt("gamma exponents (drude_hard): gamma %.4f (want 3.0+-0.1), "
               "gamma_rwa %.4f (want 1.0+-0.05)",
               s_gamma, s_rwa));
    const CoefficientTable pure = tabulate(drude_spec(0.1, 1.0), 1.0, grid);
    const double s_pure = fit_loglog_slope(pure.grid(), pure.gamma_fv(), 1e-3, 1e-2);
    info(fmt("pure drude gamma exponent %.4f: the divergent second spectral "
             "moment lowers the t^3 law to ~t^2 (known deviation, not a failure)",
             s_pure));
}

void criterion_3() {
    const BathSpec spec = drude_spec(0.1, 1.0);
    const auto grid = log_plus_uniform(1e-3, 1.0, 50.0, 0.25);
    const CoefficientTable table = tabulate(spec, 1.0, grid);
    double worst_d = 0.0, worst_g = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] < 30.0) continue;
        worst_d = std::max(worst_d, std::abs(table.delta_fv()[k] - table.delta_rwa()[k]) /
                                        table.delta_fv()[k]);
        worst_g = std::max(worst_g, std::abs(table.gamma_fv()[k] - table.gamma_rwa()[k]) /
                                        table.gamma_fv()[k]);
    }
    const bool pass = worst_d <= 0.02 && worst_g <= 0.02;
    report(3, pass,
           fmt("coefficient convergence for t in [30, 50]: max |dDelta|/Delta "
               "%.3f%%, max |dgamma|/gamma %.3f%% (limit 2%%)",
               100.0 * worst_d, 100.0 * worst_g));
}

struct ShortTimeFit {
    double c_fv, c_rw;
};

ShortTimeFit short_time_density_fit(double alpha, double theta, int fock_dim) {
    const BathSpec spec = hard_spec(alpha, theta);
    const auto tab_grid = logspace0(1e-4, 0.06, 49);
    const CoefficientTable table = tabulate(spec, 1.0, tab_grid);
    const auto grid = logspace0(5e-4, 0.04, 33);
    const Trajectory fv = evolve_density(ModelKind::FV, table,
                                         vacuum_state(fock_dim), grid);
    const Trajectory rw = evolve_density(ModelKind::RW, table,
                                         vacuum_state(fock_dim), grid);
    return {fit_quadratic_coefficient(fv, 0.002, 0.02),
            fit_quadratic_coefficient(rw, 0.002, 0.02)};
}

void criterion_4() {
    // quadratic heating law coefficients:
    //   FV: 2 a^2 Int w|g|^2 (n+1/2) dw,  RW: a^2 Int w|g|^2 n dw
    const double alpha = 0.1;
    auto theory = [&](double theta) {
        const SpectralFamily fam{SpectralKind::drude_hard, 1.0, 10.0};
        bool ok = true;
        const double i_half = adaptive_integrate(
            [&](double w) { return 0.5 * w * spectral_density(fam, w); }, 0.0,
            10.0, 1e-12, 0.0, &ok);
        double i_n = 0.0;
        if (theta > 0.0) {
            i_n = adaptive_integrate(
                [&](double w) {
                    return w * spectral_density(fam, w) *
                           (w > 0 ? thermal_occupation(theta, w) : 0.0);
                },
                0.0, 10.0, 1e-12, 0.0, &ok);
        }
        return std::pair<double, double>{2.0 * alpha * alpha * (i_n + i_half),
                                         alpha * alpha * i_n};
    };

    const auto [cfv_th1, crw_th1] = theory(1.0);
    const ShortTimeFit f1 = short_time_density_fit(alpha, 1.0, 40);
    const double err_fv = std::abs(f1.c_fv - cfv_th1) / cfv_th1;
    const double err_rw = std::abs(f1.c_rw - crw_th1) / crw_th1;

    const ShortTimeFit f10 = short_time_density_fit(alpha, 10.0, 40);
    const double ratio10 = f10.c_fv / f10.c_rw;

    const ShortTimeFit f0 = short_time_density_fit(alpha, 0.0, 40);
    const double rw_over_fv = std::abs(f0.c_rw) / f0.c_fv;

    const bool pass = err_fv <= 0.02 && err_rw <= 0.02 && ratio10 >= 1.9 &&
                      ratio10 <= 2.2 && rw_over_fv < 1e-3;
    report(4, pass,
           fmt("short-time heating: FV coeff err %.3f%%, RW err %.3f%% (limit 2%%)",
               100.0 * err_fv, 100.0 * err_rw));
    info(fmt("theta=10 FV/RW ratio %.3f (want [1.9, 2.2]); theta=0 RW/FV %.2e "
             "(want < 1e-3)",
             ratio10, rw_over_fv));
}

void criterion_5() {
    // alpha = 0.1, drude wc = w0, theta = w0: both models reach n(w0) within
    // 1% (long run) and fit rate pi a^2 w0 |g(w0)|^2 = a^2/2 within 5%
    // (450-long run whose final third carries the exponential signal).
    const BathSpec spec = drude_spec(0.1, 1.0);
    const double n_inf = 1.0 / std::expm1(1.0);
    const double rate_th = 0.5 * 0.1 * 0.1;

    RunConfig cfg;
    cfg.alpha = 0.1;
    const CoefficientTable table =
        tabulate(spec, 1.0, cfg.coefficient_grid(1000.0), {}, 0);

    const auto long_grid = linspace(0.0, 1000.0, 501);
    const Trajectory fv = evolve_moments(ModelKind::FV, table, MomentState{}, long_grid);
    const Trajectory rw = evolve_moments(ModelKind::RW, table, MomentState{}, long_grid);
    const double reach_fv = std::abs(fv.n_mean.back() - n_inf) / n_inf;
    const double reach_rw = std::abs(rw.n_mean.back() - n_inf) / n_inf;

    cfg.grid.kind = "compare";
    cfg.grid.t_max = 450.0;
    cfg.grid.n_points = 300;
    const auto cmp_grid = cfg.make_grid();
    const Trajectory fv_c = evolve_moments(ModelKind::FV, table, MomentState{}, cmp_grid);
    const Trajectory rw_c = evolve_moments(ModelKind::RW, table, MomentState{}, cmp_grid);
    const ComparisonReport rep = heating_report(fv_c, rw_c, 1.0);
    const double rate_err_fv = std::abs(rep.rate_fv - rate_th) / rate_th;
    const double rate_err_rw = std::abs(rep.rate_rw - rate_th) / rate_th;

    const bool pass = reach_fv <= 0.01 && reach_rw <= 0.01 &&
                      rate_err_fv <= 0.05 && rate_err_rw <= 0.05;
    report(5, pass,
           fmt("heating asymptote: n(1000) off n(w0) by FV %.3f%%, RW %.3f%% "
               "(limit 1%%)",
               100.0 * reach_fv, 100.0 * reach_rw));
    info(fmt("fitted rates: FV %.5f, RW %.5f vs alpha^2/2 = %.5f (limit 5%%)",
             rep.rate_fv, rep.rate_rw, rate_th));
}

void criterion_6() {
    const double alpha = 0.05;
    const BathSpec spec = drude_spec(alpha, 1.0);
    const auto grid = linspace(0.0, 20.0, 201);

    RunConfig cfg;
    const CoefficientTable table = tabulate(spec, 1.0, cfg.coefficient_grid(20.0));
    const OracleBath bath = discretize(spec, 300, 10.0);

    double worst = 0.0;
    for (ModelKind kind : {ModelKind::FV, ModelKind::RW}) {
        const Trajectory exact = exact_evolution(kind, bath, alpha, 1.0, grid);
        const Trajectory tcl = evolve_moments(kind, table, MomentState{}, grid);
        double nmax = 0.0;
        for (double v : exact.n_mean) nmax = std::max(nmax, v);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            worst = std::max(worst,
                             std::abs(tcl.n_mean[k] - exact.n_mean[k]) / nmax);
        }
    }

    const BathSpec cal = hard_spec(alpha, 1.0);
    const OracleBath cal_bath = discretize(cal, 300, 10.0);
    double worst_kappa = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double tau = 0.2 * i;
        const double cont = kernels(cal, 1.0, tau).kappa;
        const double disc = cal_bath.kappa_discrete(alpha, tau);
        worst_kappa = std::max(worst_kappa, std::abs(disc - cont) / std::abs(cont));
    }

    const bool pass = worst <= 0.05 && worst_kappa <= 1e-3;
    report(6, pass,
           fmt("oracle equivalence: TCL2 vs exact bath max dev %.3f%% of peak "
               "(limit 5%%); discrete kappa dev %.2e (limit 1e-3)",
               100.0 * worst, worst_kappa));
}

void criterion_7() {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 6;
    auto rand_mat = [&]() {
        FockMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = cplx(u(rng), u(rng));
        return m;
    };
    double worst_identity = 0.0, worst_trace = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const FockMatrix A = rand_mat(), B = rand_mat();
        const FockMatrix C = A * B - B * A;
        const auto As = commutator_super(FockOperator{n, A}).entries;
        const auto Bs = commutator_super(FockOperator{n, B}).entries;
        const auto Aa = anticommutator_super(FockOperator{n, A}).entries;
        const auto Ba = anticommutator_super(FockOperator{n, B}).entries;
        const auto Cs = commutator_super(FockOperator{n, C}).entries;
        const auto Ca = anticommutator_super(FockOperator{n, C}).entries;
        worst_identity = std::max({worst_identity,
                                   (As * Bs - Bs * As - Cs).cwiseAbs().maxCoeff(),
                                   (Aa * Ba - Ba * Aa - Cs).cwiseAbs().maxCoeff(),
                                   (As * Ba - Ba * As - Ca).cwiseAbs().maxCoeff(),
                                   (Aa * Bs - Bs * Aa - Ca).cwiseAbs().maxCoeff()});
        FockMatrix m = rand_mat();
        FockMatrix rho = m * m.adjoint();
        rho /= rho.trace();
        worst_trace = std::max(
            worst_trace,
            std::abs(commutator_super(FockOperator{n, A}).apply(rho).trace()));
    }
    const bool pass = worst_identity <= 1e-12 && worst_trace <= 1e-13;
    report(7, pass,
           fmt("superoperator identities: worst identity residual %.2e (limit "
               "1e-12), worst commutator trace %.2e (limit 1e-13)",
               worst_identity, worst_trace));
}

void criterion_8() {
    const BathSpec spec = drude_spec(0.1, 1.0);
    RunConfig cfg;
    const CoefficientTable table = tabulate(spec, 1.0, cfg.coefficient_grid(50.0));
    const auto windows = lindblad_window(table, DissipatorModel::rw);
    const bool lindblad_all = windows.size() == 1 && windows.front().is_lindblad;

    const auto grid = linspace(0.0, 50.0, 101);
    const Trajectory traj = evolve_density(ModelKind::RW, table, vacuum_state(40), grid);
    double min_eig = 0.0;
    for (double v : traj.min_eig) min_eig = std::min(min_eig, v);
    const bool pass = lindblad_all && traj.trace_err.back() < 1e-10 &&
                      traj.herm_err.back() < 1e-10 && min_eig >= -1e-8;
    report(8, pass,
           fmt("evolution hygiene (RW, Lindblad window full range): trace err "
               "%.2e, herm err %.2e, min eig %.2e",
               traj.trace_err.back(), traj.herm_err.back(), min_eig));
}

void criterion_9() {
    const BathSpec spec = drude_spec(0.1, 1.0);
    RunConfig cfg;
    const CoefficientTable table = tabulate(spec, 1.0, cfg.coefficient_grid(50.0));
    const auto grid = linspace(0.0, 50.0, 201);

    double dev_rw = 0.0, dev_fvrwa = 0.0, dev_fv = 0.0;
    for (auto [kind, dev] : {std::pair<ModelKind, double*>{ModelKind::RW, &dev_rw},
                             {ModelKind::FV_RWA, &dev_fvrwa},
                             {ModelKind::FV, &dev_fv}}) {
        const Trajectory md = evolve_moments(kind, table, MomentState{}, grid);
        const Trajectory fd = evolve_density(kind, table, vacuum_state(40), grid);
        double nmax = 0.0;
        for (double v : fd.n_mean) nmax = std::max(nmax, v);
        for (std::size_t k = 1; k < grid.size(); ++k) {
            const double denom = std::max(std::abs(fd.n_mean[k]), 1e-6 * nmax);
            *dev = std::max(*dev, std::abs(md.n_mean[k] - fd.n_mean[k]) / denom);
        }
    }

    // swapped-order vs 2D Simpson quadrature at five fixed samples
    const struct {
        double t, theta;
    } samples[] = {{0.7, 0.3}, {1.3, 1.0}, {2.0, 0.0}, {0.9, 2.2}, {3.1, 0.6}};
    double dev_quad = 0.0;
    for (const auto& s : samples) {
        const BathSpec hs = hard_spec(0.15, s.theta);
        const int n_om = 1200, n_tau = 1200;
        const double hw = 10.0 / n_om, ht = s.t / n_tau;
        auto sw = [](int k, int n) {
            return (k == 0 || k == n) ? 1.0 : ((k % 2 == 1) ? 4.0 : 2.0);
        };
        double dfv = 0.0, gfv = 0.0;
        for (int i = 0; i <= n_om; ++i) {
            const double w = i * hw;
            const double g2 = spectral_density(hs.spectral, w);
            double ek = hs.theta * spectral_density(hs.spectral, 0.0);
            if (w > 0) {
                const double occ = hs.theta > 0 ? thermal_occupation(hs.theta, w) : 0.0;
                ek = w * g2 * (occ + 0.5);
            }
            const double eg = 0.5 * w * g2;
            double sd = 0.0, sg = 0.0;
            for (int j = 0; j <= n_tau; ++j) {
                const double tau = j * ht;
                sd += sw(j, n_tau) * std::cos(w * tau) * std::cos(tau);
                sg += sw(j, n_tau) * std::sin(w * tau) * std::sin(tau);
            }
            dfv += sw(i, n_om) * 2.0 * ek * sd;
            gfv += sw(i, n_om) * 2.0 * eg * sg;
        }
        const double scale = hs.alpha * hs.alpha * (hw / 3.0) * (ht / 3.0);
        dfv *= scale;
        gfv *= scale;
        const FvCoefficients c = fv_coefficients(hs, 1.0, s.t);
        dev_quad = std::max(dev_quad, std::abs(c.delta - dfv) / std::abs(dfv));
        dev_quad = std::max(dev_quad, std::abs(c.gamma - gfv) / std::abs(dfv));
    }

    const bool pass = dev_rw <= 1e-4 && dev_fvrwa <= 1e-4 && dev_fv <= 1e-3 &&
                      dev_quad <= 1e-4;
    report(9, pass,
           fmt("internal oracles: moment-vs-Fock dev RW %.2e, FV_RWA %.2e "
               "(limit 1e-4)",
               dev_rw, dev_fvrwa));
    info(fmt("FV %.2e (limit 1e-3); swapped-order vs 2D quadrature %.2e "
             "(limit 1e-4)",
             dev_fv, dev_quad));
}

}  // namespace

int main() {
    std::printf("oscbath acceptance suite (omega0 = 1 units)\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("acceptance: %d/9 criteria passed\n", 9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
