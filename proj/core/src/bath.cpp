#include "oscbath/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oscbath/gauss.hpp"

namespace oscbath {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
}  // namespace

void SpectralFamily::validate() const {
    if (!(omega_c > 0.0)) {
        throw std::invalid_argument("spectral: omega_c must be > 0");
    }
    if (kind == SpectralKind::drude_hard) {
        if (!omega_max) {
            throw std::invalid_argument("spectral: drude_hard requires omega_max");
        }
        if (!(*omega_max > omega_c)) {
            throw std::invalid_argument("spectral: omega_max must exceed omega_c");
        }
    } else if (omega_max && !(*omega_max > omega_c)) {
        throw std::invalid_argument("spectral: omega_max must exceed omega_c");
    }
}

void BathSpec::validate() const {
    if (!(alpha >= 0.0)) throw std::invalid_argument("bath: alpha must be >= 0");
    if (!(theta >= 0.0)) throw std::invalid_argument("bath: theta must be >= 0");
    spectral.validate();
}

double spectral_density(const SpectralFamily& family, double omega) {
    if (omega < 0.0) throw std::domain_error("spectral_density: omega must be >= 0");
    const double wc2 = family.omega_c * family.omega_c;
    switch (family.kind) {
        case SpectralKind::drude:
            return (1.0 / kPi) * wc2 / (wc2 + omega * omega);
        case SpectralKind::drude_hard:
            if (family.omega_max && omega > *family.omega_max) return 0.0;
            return (1.0 / kPi) * wc2 / (wc2 + omega * omega);
        case SpectralKind::ohmic_exp:
            return (1.0 / kPi) * std::exp(-omega / family.omega_c);
    }
    return 0.0;
}

double thermal_occupation(double theta, double omega) {
    if (omega < 0.0) throw std::domain_error("thermal_occupation: omega must be >= 0");
    if (theta == 0.0) return 0.0;
    if (omega == 0.0) {
        throw std::domain_error(
            "thermal_occupation: n(0) diverges at theta > 0; "
            "use the w*n(w) weighted integrand instead");
    }
    const double x = omega / theta;
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

namespace {

// w |g|^2 (n + 1/2), finite and smooth down to w = 0:
// w (n(w) + 1/2) = (w/2) coth(w / 2 theta) -> theta as w -> 0.
double kappa_envelope(const BathSpec& spec, double omega) {
    const double g2 = spectral_density(spec.spectral, omega);
    if (spec.theta == 0.0) return 0.5 * omega * g2;
    if (omega == 0.0) return spec.theta * spectral_density(spec.spectral, 0.0);
    return omega * g2 * (thermal_occupation(spec.theta, omega) + 0.5);
}

double gamma_envelope(const BathSpec& spec, double omega) {
    return 0.5 * omega * spectral_density(spec.spectral, omega);
}

// Upper end of the finite quadrature band. Beyond it, either the envelope is
// negligible (exp cutoff / thermal factor) or only the algebraic drude
// vacuum tail remains, which DrudeTail handles in closed form.
double band_split_point(const BathSpec& spec, double omega0) {
    const double wc = spec.spectral.omega_c;
    switch (spec.spectral.kind) {
        case SpectralKind::drude_hard:
            return *spec.spectral.omega_max;
        case SpectralKind::ohmic_exp: {
            double W = wc * (46.0 + std::log1p(spec.theta / wc));
            return std::max({W, 12.0 * omega0, 12.0 * wc});
        }
        case SpectralKind::drude:
            return std::max({42.0 * spec.theta, 12.0 * omega0, 12.0 * wc});
    }
    return 12.0 * std::max(omega0, wc);
}

}  // namespace

BathEnvelopes build_envelopes(const BathSpec& spec, double omega0,
                              double t_osc_max,
                              const QuadratureSettings& settings) {
    spec.validate();
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be > 0");

    BathEnvelopes env;
    env.band_top = band_split_point(spec, omega0);
    env.has_drude_tail = (spec.spectral.kind == SpectralKind::drude);

    const double W = env.band_top;
    const double wc = spec.spectral.omega_c;
    const double osc_cap =
        (t_osc_max > 0.0)
            ? settings.periods_per_panel * 2.0 * kPi / (t_osc_max * settings.refine)
            : W;

    // Panel edges: graded near w = 0 (thermal scale), capped by the local
    // envelope scale and by the oscillation budget per panel.
    std::vector<double> edges{0.0};
    double x = 0.0;
    const double theta_scale = spec.theta > 0.0 ? 2.0 * spec.theta : W;
    while (x < W) {
        const double local_env =
            std::min({wc, omega0, std::max({theta_scale, 0.25 * x, W * 1e-7})});
        double width = std::min(local_env / settings.refine, osc_cap);
        width = std::max(width, W * 1e-9);
        x = std::min(x + width, W);
        edges.push_back(x);
    }

    const GaussRule& rule = gauss_legendre(settings.gl_points);
    const std::size_t total = (edges.size() - 1) * rule.nodes.size();
    env.omega.reserve(total);
    env.weight.reserve(total);
    env.e_kappa.reserve(total);
    env.e_gamma.reserve(total);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        const double mid = 0.5 * (edges[p + 1] + edges[p]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double w = mid + half * rule.nodes[i];
            env.omega.push_back(w);
            env.weight.push_back(half * rule.weights[i]);
            env.e_kappa.push_back(kappa_envelope(spec, w));
            env.e_gamma.push_back(gamma_envelope(spec, w));
        }
    }
    return env;
}

// ---------------------------------------------------------------------------
// DrudeTail
// ---------------------------------------------------------------------------

DrudeTail::DrudeTail(double W, double omega_c, double omega0, double rel_tol)
    : W_(W), wc_(omega_c), omega0_(omega0), rel_tol_(rel_tol) {
    if (!(W > 1.5 * omega0) || !(W > 1.5 * omega_c)) {
        throw std::invalid_argument("DrudeTail: band split must exceed omega0 and omega_c");
    }
}

namespace {

// h(z) = (wc^2 / 2 pi) z / (z^2 + wc^2), analytic off z = +-i wc.
cplx h_vac(cplx z, double wc) {
    return (wc * wc / (2.0 * kPi)) * z / (z * z + wc * wc);
}

// Laplace-type contour integral J = Int_0^inf q(W + i y) e^{-y t} dy for the
// rotated tail of Int_W^inf q(w) e^{i w t} dw. The rotated integrand decays
// both through e^{-y t} and through q's algebraic falloff, so a plain
// adaptive quadrature over geometric segments suffices.
cplx laplace_tail(const std::function<cplx(cplx)>& q, double W, double t,
                  double rel_tol, bool* converged, int max_segments = 64) {
    const double scale = (t > 0.0) ? std::min(1.0 / t, W) : W;
    bool ok_re = true, ok_im = true;
    const double re = integrate_decaying_tail(
        [&](double y) { return q(cplx(W, y)).real() * std::exp(-y * t); },
        scale, rel_tol, &ok_re, max_segments);
    const double im = integrate_decaying_tail(
        [&](double y) { return q(cplx(W, y)).imag() * std::exp(-y * t); },
        scale, rel_tol, &ok_im, max_segments);
    if (converged) *converged = ok_re && ok_im;
    return {re, im};
}

}  // namespace

std::complex<double> DrudeTail::osc(double shift, double t) const {
    if (t <= 0.0) return {0.0, 0.0};
    // Int_W^inf h e^{i(w-shift)t}/(w-shift) dw
    //   = e^{i(W-shift)t} * i * Int_0^inf h(W+iy)/(W+iy-shift) e^{-yt} dy.
    const double wc = wc_;
    auto q = [wc, shift](cplx z) { return h_vac(z, wc) / (z - shift); };
    const cplx J = laplace_tail(q, W_, t, rel_tol_, nullptr);
    const cplx phase = std::exp(cplx(0.0, (W_ - shift) * t));
    return phase * cplx(0.0, 1.0) * J;
}

double DrudeTail::stat(double shift) const {
    // Partial fractions of h(w)/(w-s) with k = wc^2/(2 pi):
    //   A/(w-s) + (Bw + C)/(w^2 + wc^2),  A = k s/(s^2+wc^2), B = -A, C = k - sA.
    const double k = wc_ * wc_ / (2.0 * kPi);
    const double s = shift;
    const double A = k * s / (s * s + wc_ * wc_);
    const double C = k - s * A;
    const double log_term = -A * std::log((W_ - s) / std::hypot(W_, wc_));
    const double atan_term = (C / wc_) * (0.5 * kPi - std::atan(W_ / wc_));
    return log_term + atan_term;
}

std::complex<double> DrudeTail::osc_plain(double tau, bool* converged) const {
    if (tau <= 0.0) {
        if (converged) *converged = false;
        return {0.0, 0.0};
    }
    const double wc = wc_;
    auto q = [wc](cplx z) { return h_vac(z, wc); };
    bool ok = true;
    // The kernel tail integrand decays only through e^{-y tau} times 1/y;
    // a bounded segment budget turns the tau -> 0 log divergence into a
    // reported flag instead of an unbounded scan.
    const cplx J = laplace_tail(q, W_, tau, rel_tol_, &ok, 40);
    if (converged) *converged = ok;
    const cplx phase = std::exp(cplx(0.0, W_ * tau));
    return phase * cplx(0.0, 1.0) * J;
}

// ---------------------------------------------------------------------------
// kernels
// ---------------------------------------------------------------------------

KernelSample kernels(const BathSpec& spec, double omega0, double tau,
                     const QuadratureSettings& settings) {
    if (!(tau > 0.0)) throw std::domain_error("kernels: tau must be > 0");
    spec.validate();

    KernelSample out;
    out.tau = tau;
    const double a2 = spec.alpha * spec.alpha;
    if (a2 == 0.0) return out;

    const BathEnvelopes env = build_envelopes(spec, omega0, tau, settings);

    double kap = 0.0, mu = 0.0, kap_r = 0.0, mur = 0.0, mui = 0.0;
    for (std::size_t i = 0; i < env.omega.size(); ++i) {
        const double w = env.omega[i];
        const double wt = env.weight[i];
        const double ek = env.e_kappa[i] * wt;
        const double eg = env.e_gamma[i] * wt;
        const double c = std::cos(w * tau), s = std::sin(w * tau);
        const double cr = std::cos((w - omega0) * tau);
        const double sr = std::sin((w - omega0) * tau);
        kap += 2.0 * ek * c;    // kappa
        mu += 2.0 * eg * s;     // mu = Int w|g|^2 sin
        kap_r += ek * cr;       // kappa^RWA
        mur += eg * cr;         // integrates to gamma^RWA
        mui += eg * sr;         // integrates to r^RWA / 2
    }

    if (env.has_drude_tail) {
        const DrudeTail tail(env.band_top, spec.spectral.omega_c, omega0,
                             settings.tail_rel_tol);
        bool ok = true;
        const cplx plain = tail.osc_plain(tau, &ok);  // Int h e^{i w tau}
        if (!ok) out.log_divergent = true;
        // kappa vacuum tail: 2 * Int h cos(w tau); mu tail: 2 * Int h sin(w tau)
        kap += 2.0 * plain.real();
        mu += 2.0 * plain.imag();
        // resonant factors: e^{-i w0 tau} * plain
        const cplx res = std::exp(cplx(0.0, -omega0 * tau)) * plain;
        kap_r += res.real();
        mur += res.real();
        mui += res.imag();
        // Thermal part beyond the band is below machine noise by construction.
    }

    out.kappa = a2 * kap;
    out.mu = a2 * mu;
    out.kappa_rwa = a2 * kap_r;
    out.mu_r_rwa = a2 * mur;
    out.mu_i_rwa = a2 * mui;
    return out;
}

}  // namespace oscbath
