// config.hpp — Run configuration: a single JSON document with strict key
// checking; CLI flags override top-level keys.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "oscbath/bath.hpp"
#include "oscbath/evolve.hpp"

namespace oscbath {

struct GridSpec {
    double t_max = 50.0;
    int n_points = 501;
    std::string kind = "uniform";  // uniform | log | compare
    double t_min = 0.0;            // first positive point for log grids; 0 = auto
};

struct OracleSpec {
    int n_modes = 300;
    double omega_max = 10.0;  // discretization band (0, omega_max]
};

struct RunConfig {
    double omega0 = 1.0;  // fixed; all frequencies are in units of omega0
    double alpha = 0.1;
    double theta = 1.0;
    SpectralFamily spectral{};
    GridSpec grid{};
    int fock_dim = 0;  // 0 = choose from theta (40 for theta<=1, 80 for <=3)
    double rk_tol = 1e-9;
    double tail_tol = 1e-8;
    QuadratureSettings quadrature{};
    std::vector<ModelKind> models{ModelKind::FV, ModelKind::RW};
    OracleSpec oracle{};

    void validate() const;
    int resolved_fock_dim() const;
    BathSpec bath() const;

    // Simulation grid per GridSpec. "compare" grids carry a logarithmic head
    // through the short-time fit window and a uniform tail whose final third
    // serves the exponential fit.
    std::vector<double> make_grid() const;

    // Tabulation grid for the coefficient table backing a run to t_max:
    // log head below 1/omega_c plus a uniform section resolving the
    // late-time coefficient oscillations.
    std::vector<double> coefficient_grid(double t_max) const;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
    nlohmann::json to_json() const;
};

struct ConfigOverrides {
    std::optional<double> alpha, theta, t_max;
    std::optional<int> n_points, fock_dim;
    std::optional<std::string> grid_kind;
    std::optional<std::vector<ModelKind>> models;
};

void apply_overrides(RunConfig& cfg, const ConfigOverrides& ov);

ModelKind parse_model(const std::string& name);

}  // namespace oscbath
