// bath.hpp — Reservoir models: spectral densities, thermal occupation,
// and the FV / RWA correlation and susceptibility kernels.
//
// Units: hbar = 1, frequencies in units of the oscillator frequency
// (omega0 = 1 internally), temperature theta = k_B T / hbar.
#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace oscbath {

enum class SpectralKind { drude, drude_hard, ohmic_exp };

// |g(omega)|^2 family with cutoffs.
//   drude:      (1/pi) wc^2 / (wc^2 + w^2)
//   drude_hard: same, zero above omega_max
//   ohmic_exp:  (1/pi) exp(-w/wc)
struct SpectralFamily {
    SpectralKind kind = SpectralKind::drude;
    double omega_c = 1.0;
    std::optional<double> omega_max{};  // required for drude_hard

    void validate() const;
};

struct BathSpec {
    double alpha = 0.1;  // dimensionless coupling
    double theta = 1.0;  // temperature as a frequency, k_B T / hbar
    SpectralFamily spectral{};

    void validate() const;
};

// One evaluation of the bath kernels at delay tau.
//   kappa:    correlation kernel 2 a^2 Int w|g|^2 (n+1/2) cos(w tau) dw
//   mu:       susceptibility      a^2 Int w|g|^2 sin(w tau) dw
//   kappa_rwa, mu_r_rwa, mu_i_rwa: resonant counterparts with the single
//   cos/sin((w - w0) tau) factor, normalized so that their running time
//   integrals reproduce the RWA master-equation coefficients.
struct KernelSample {
    double tau = 0.0;
    double kappa = 0.0;
    double mu = 0.0;
    double kappa_rwa = 0.0;
    double mu_r_rwa = 0.0;
    double mu_i_rwa = 0.0;
    // Set when the frequency quadrature could not certify convergence
    // (pure drude near tau -> 0, where kappa diverges logarithmically).
    bool log_divergent = false;
};

double spectral_density(const SpectralFamily& family, double omega);

// Bose occupation 1/(exp(w/theta)-1); identically 0 at theta = 0.
// Throws std::domain_error at w = 0 with theta > 0 (callers must use the
// w*n(w) weighted integrand form, which stays finite).
double thermal_occupation(double theta, double omega);

struct QuadratureSettings {
    int gl_points = 16;             // Gauss-Legendre nodes per panel
    double periods_per_panel = 1.5; // trig oscillation allowed per panel
    double refine = 1.0;            // panel multiplier (self-tests use 2)
    double tail_rel_tol = 1e-12;    // tolerance of the analytic-tail quadrature
};

KernelSample kernels(const BathSpec& spec, double omega0, double tau,
                     const QuadratureSettings& settings = {});

// ---------------------------------------------------------------------------
// Shared frequency-quadrature machinery (consumed by the coeffs module).
//
// Integrals of the form Int_0^W E(w) * trig(...) dw are evaluated on a fixed
// panelized Gauss-Legendre node set whose panel widths resolve the fastest
// oscillation requested (t_osc_max). For the pure drude family the band
// [W, inf) carries an algebraic vacuum tail which is integrated exactly via
// contour rotation (see DrudeTail).
// ---------------------------------------------------------------------------

struct BathEnvelopes {
    std::vector<double> omega;    // quadrature nodes in [0, W]
    std::vector<double> weight;   // matching quadrature weights
    std::vector<double> e_kappa;  // w |g|^2 (n + 1/2) at nodes
    std::vector<double> e_gamma;  // (w/2) |g|^2 at nodes
    double band_top = 0.0;        // W
    bool has_drude_tail = false;  // pure drude: algebraic tail beyond W
};

BathEnvelopes build_envelopes(const BathSpec& spec, double omega0,
                              double t_osc_max,
                              const QuadratureSettings& settings = {});

// Tail integrals over [W, inf) of h(w) = (wc^2 / 2 pi) w / (w^2 + wc^2),
// the vacuum part of both kernel envelopes for the pure drude family.
class DrudeTail {
public:
    DrudeTail(double W, double omega_c, double omega0, double rel_tol);

    // Int_W^inf h(w) e^{i (w - shift) t} / (w - shift) dw, as cos + i sin.
    std::complex<double> osc(double shift, double t) const;
    // Int_W^inf h(w) / (w - shift) dw (elementary closed form).
    double stat(double shift) const;
    // Int_W^inf h(w) e^{i w tau} dw (kernel-type tail, no resonant factor).
    // Sets *converged = false when the Laplace quadrature hits its budget.
    std::complex<double> osc_plain(double tau, bool* converged = nullptr) const;

    double band_top() const { return W_; }

private:
    double W_;
    double wc_;
    double omega0_;
    double rel_tol_;
};

}  // namespace oscbath
