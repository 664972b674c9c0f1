#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscbath/coeffs.hpp"
#include "oscbath/errors.hpp"
#include "oscbath/gauss.hpp"
#include "oscbath/oracle.hpp"

using namespace oscbath;

namespace {
constexpr double kPi = std::numbers::pi;

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

}  // namespace

TEST_CASE("discretize: flat density gives equal weights; recurrence horizon") {
    // ohmic_exp with a huge cutoff is flat over any finite band
    BathSpec spec{0.1, 0.0, {SpectralKind::ohmic_exp, 1e9, {}}};
    const OracleBath two = discretize(spec, 2, 1.0);
    REQUIRE(two.modes.size() == 2);
    CHECK(two.modes[0].weight == doctest::Approx(two.modes[1].weight).epsilon(1e-9));
    CHECK(two.modes[0].omega == doctest::Approx(0.25));
    CHECK(two.modes[1].omega == doctest::Approx(0.75));

    const OracleBath bath = discretize(drude_spec(0.1, 1.0), 300, 10.0);
    CHECK(bath.recurrence_time ==
          doctest::Approx(2.0 * kPi * 300.0 / 10.0).epsilon(1e-12));
}

TEST_CASE("discrete weights reproduce the band integrals") {
    const BathSpec spec = drude_spec(0.1, 1.0);
    const OracleBath bath = discretize(spec, 300, 10.0);
    bool ok = true;
    const double int_g2 = adaptive_integrate(
        [&](double w) { return spectral_density(spec.spectral, w); }, 0.0, 10.0,
        1e-12, 0.0, &ok);
    const double int_wg2 = adaptive_integrate(
        [&](double w) { return w * spectral_density(spec.spectral, w); }, 0.0,
        10.0, 1e-12, 0.0, &ok);
    REQUIRE(ok);
    double sum_g2 = 0.0, sum_wg2 = 0.0;
    for (const auto& m : bath.modes) {
        sum_g2 += m.weight * m.weight;
        sum_wg2 += m.omega * m.weight * m.weight;
    }
    CHECK(std::abs(sum_g2 - int_g2) / int_g2 < 1e-6);
    CHECK(std::abs(sum_wg2 - int_wg2) / int_wg2 < 1e-3);
}

TEST_CASE("discretized kappa matches the band-limited continuum kernel") {
    // The calibration pinning the discrete <-> continuum dictionary: the
    // cosine sum over modes against the drude_hard kernel with the same band.
    const BathSpec spec = hard_spec(0.05, 1.0);
    const OracleBath bath = discretize(spec, 300, 10.0);
    for (int i = 1; i <= 10; ++i) {
        const double tau = 0.2 * i;
        const double cont = kernels(spec, 1.0, tau).kappa;
        const double disc = bath.kappa_discrete(spec.alpha, tau);
        CHECK(std::abs(disc - cont) / std::abs(cont) < 1e-3);
    }
}

TEST_CASE("free oracle stays in vacuum; diagnostics are tight") {
    const OracleBath bath = discretize(drude_spec(0.0, 1.0), 60, 10.0);
    OracleDiagnostics diag;
    const Trajectory traj =
        exact_evolution(ModelKind::FV, bath, 0.0, 1.0, linspace(0.0, 5.0, 51), &diag);
    for (double nv : traj.n_mean) CHECK(std::abs(nv) < 1e-13);
    CHECK(diag.symplectic_error < 1e-10);
    CHECK(diag.energy_rel_drift < 1e-9);
}

TEST_CASE("oracle conserves energy and the symplectic form when coupled") {
    const OracleBath bath = discretize(drude_spec(0.1, 1.0), 120, 10.0);
    OracleDiagnostics diag;
    exact_evolution(ModelKind::FV, bath, 0.1, 1.0, linspace(0.0, 20.0, 101), &diag);
    CHECK(diag.symplectic_error < 1e-10);
    CHECK(diag.energy_rel_drift < 1e-9);
    exact_evolution(ModelKind::RW, bath, 0.1, 1.0, linspace(0.0, 20.0, 101), &diag);
    CHECK(diag.symplectic_error < 1e-10);
    CHECK(diag.energy_rel_drift < 1e-9);
}

TEST_CASE("recurrence horizon and grid validation") {
    const OracleBath bath = discretize(drude_spec(0.1, 1.0), 20, 10.0);
    // T_rec = 2 pi 20/10 = 4 pi ~ 12.6
    CHECK_THROWS_AS(
        exact_evolution(ModelKind::FV, bath, 0.1, 1.0, linspace(0.0, 13.0, 14)),
        RecurrenceError);
    CHECK_THROWS_AS(
        exact_evolution(ModelKind::FV, bath, 0.1, 1.0, {0.0, 0.1, 0.3}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        exact_evolution(ModelKind::FV_RWA, bath, 0.1, 1.0, linspace(0.0, 1.0, 5)),
        std::invalid_argument);
}

TEST_CASE("RW oracle at zero temperature stays dark while FV heats") {
    const OracleBath bath = discretize(hard_spec(0.05, 0.0), 200, 10.0);
    const auto grid = linspace(0.0, 0.02, 11);
    const Trajectory fv = exact_evolution(ModelKind::FV, bath, 0.05, 1.0, grid);
    const Trajectory rw = exact_evolution(ModelKind::RW, bath, 0.05, 1.0, grid);
    CHECK(fv.n_mean.back() > 0.0);
    CHECK(std::abs(rw.n_mean.back()) < 1e-3 * fv.n_mean.back());
    // quadratic growth of the FV heating at short times
    const double q1 = fv.n_mean[5] / (grid[5] * grid[5]);
    const double q2 = fv.n_mean.back() / (grid.back() * grid.back());
    CHECK(q1 == doctest::Approx(q2).epsilon(1e-3));
}

TEST_CASE("mode-count convergence of the oracle heating") {
    const BathSpec spec = drude_spec(0.05, 1.0);
    const auto grid = linspace(0.0, 10.0, 51);
    const Trajectory a =
        exact_evolution(ModelKind::RW, discretize(spec, 120, 10.0), 0.05, 1.0, grid);
    const Trajectory b =
        exact_evolution(ModelKind::RW, discretize(spec, 240, 10.0), 0.05, 1.0, grid);
    double nmax = 0.0;
    for (double v : b.n_mean) nmax = std::max(nmax, v);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(a.n_mean[k] - b.n_mean[k]) < 0.01 * nmax);
    }
}

TEST_CASE("TCL2 tracks the exact discrete bath at weak coupling (light run)") {
    const BathSpec spec = drude_spec(0.05, 1.0);
    const auto grid = linspace(0.0, 10.0, 101);
    const OracleBath bath = discretize(spec, 150, 10.0);
    const Trajectory exact = exact_evolution(ModelKind::RW, bath, spec.alpha, 1.0, grid);

    std::vector<double> tab_grid{0.0};
    for (int i = 0; i < 30; ++i) tab_grid.push_back(1e-3 * std::pow(1e3, i / 29.0));
    for (double t = 1.05; t < 10.3; t += 0.05) tab_grid.push_back(t);
    const CoefficientTable table = tabulate(spec, 1.0, tab_grid);
    const Trajectory tcl = evolve_moments(ModelKind::RW, table, MomentState{}, grid);

    double nmax = 0.0;
    for (double v : exact.n_mean) nmax = std::max(nmax, v);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(tcl.n_mean[k] - exact.n_mean[k]) < 0.05 * nmax);
    }
}
