// coeffs.hpp — Time-dependent master-equation coefficients for the FV,
// FV+RWA, and RW models, tabulated for the integrators.
//
// All coefficients are single frequency integrals: the inner tau-integral of
// the trig products is carried out analytically (sinc-type factors), so only
// one numeric omega-quadrature remains. Direct 2D quadrature exists solely as
// a test oracle.
#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "oscbath/bath.hpp"
#include "oscbath/interp.hpp"

namespace oscbath {

struct FvCoefficients {
    double delta = 0.0;  // diffusion, Int_0^t kappa(tau) cos(w0 tau)
    double gamma = 0.0;  // dissipation, Int_0^t mu(tau) sin(w0 tau)
    double pi = 0.0;     // anomalous diffusion, Int_0^t kappa(tau) sin(w0 tau)
    double r = 0.0;      // frequency renormalization (diagnostic only)
};

struct RwaCoefficients {
    double delta = 0.0;
    double gamma = 0.0;
    double r = 0.0;  // diagnostic only
};

class CoefficientTable {
public:
    CoefficientTable() = default;
    CoefficientTable(std::vector<double> grid,
                     std::array<std::vector<double>, 7> columns, BathSpec spec,
                     double omega0, QuadratureSettings settings);

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& delta_fv() const { return col_[0]; }
    const std::vector<double>& gamma_fv() const { return col_[1]; }
    const std::vector<double>& pi_fv() const { return col_[2]; }
    const std::vector<double>& r_fv() const { return col_[3]; }
    const std::vector<double>& delta_rwa() const { return col_[4]; }
    const std::vector<double>& gamma_rwa() const { return col_[5]; }
    const std::vector<double>& r_rwa() const { return col_[6]; }

    // Monotone-cubic interpolated access for off-grid queries.
    FvCoefficients fv_at(double t) const;
    RwaCoefficients rwa_at(double t) const;

    double t_min() const { return grid_.front(); }
    double t_max() const { return grid_.back(); }

    const BathSpec& spec() const { return spec_; }
    double omega0() const { return omega0_; }
    const QuadratureSettings& quadrature() const { return settings_; }

private:
    std::vector<double> grid_;
    std::array<std::vector<double>, 7> col_{};
    std::array<MonotoneCubic, 7> interp_{};
    BathSpec spec_{};
    double omega0_ = 1.0;
    QuadratureSettings settings_{};
};

// Single-time evaluations (each builds a small quadrature; for dense grids
// use tabulate, which shares the frequency nodes across all times).
FvCoefficients fv_coefficients(const BathSpec& spec, double omega0, double t,
                               const QuadratureSettings& settings = {});
RwaCoefficients rwa_coefficients(const BathSpec& spec, double omega0, double t,
                                 const QuadratureSettings& settings = {});

// Evaluate both coefficient sets at every grid point. The grid must be
// strictly increasing and start at 0. Work is parallelized over grid points
// when jobs > 1.
CoefficientTable tabulate(const BathSpec& spec, double omega0,
                          const std::vector<double>& grid,
                          const QuadratureSettings& settings = {},
                          unsigned jobs = 0);

enum class DissipatorModel { fv_rwa, rw };

struct LindbladInterval {
    double t_begin = 0.0;
    double t_end = 0.0;
    DissipatorModel model = DissipatorModel::rw;
    bool is_lindblad = true;
};

// Sign scan of (delta +- gamma) for the two dissipator-form models, with
// linear-interpolated crossing times. A zero value counts as Lindblad.
std::vector<LindbladInterval> lindblad_window(const CoefficientTable& table,
                                              DissipatorModel model);
std::vector<LindbladInterval> lindblad_window(const CoefficientTable& table);

// CSV export, header:
//   t,delta_fv,gamma_fv,pi_fv,r_fv,delta_rwa,gamma_rwa,r_rwa
// one row per grid point, 17 significant digits.
void write_coefficients_csv(const CoefficientTable& table, std::ostream& os);
void write_coefficients_csv(const CoefficientTable& table,
                            const std::string& path);

}  // namespace oscbath
