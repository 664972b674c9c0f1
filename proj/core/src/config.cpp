#include "oscbath/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "oscbath/errors.hpp"

namespace oscbath {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) {
            throw ConfigError("config: unknown key \"" + (where.empty() ? key : where + "." + key) + "\"");
        }
    }
}

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string("config: \"") + key + "\" must be a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw ConfigError(std::string("config: \"") + key + "\" must be an integer");
    return j.at(key).get<int>();
}

std::string get_str(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ConfigError(std::string("config: \"") + key + "\" must be a string");
    return j.at(key).get<std::string>();
}

SpectralKind parse_family(const std::string& name) {
    if (name == "drude") return SpectralKind::drude;
    if (name == "drude_hard") return SpectralKind::drude_hard;
    if (name == "ohmic_exp") return SpectralKind::ohmic_exp;
    throw ConfigError("config: unknown spectral family \"" + name + "\"");
}

const char* family_name(SpectralKind kind) {
    switch (kind) {
        case SpectralKind::drude: return "drude";
        case SpectralKind::drude_hard: return "drude_hard";
        case SpectralKind::ohmic_exp: return "ohmic_exp";
    }
    return "?";
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) {
        out.push_back(std::exp(llo + (lhi - llo) * i / double(n - 1)));
    }
    return out;
}

}  // namespace

ModelKind parse_model(const std::string& name) {
    if (name == "fv") return ModelKind::FV;
    if (name == "fv_rwa") return ModelKind::FV_RWA;
    if (name == "rw") return ModelKind::RW;
    throw ConfigError("config: unknown model \"" + name + "\" (expected fv, fv_rwa, rw)");
}

void RunConfig::validate() const {
    if (omega0 != 1.0) {
        throw ConfigError("config: \"omega0\" is fixed to 1.0 (all frequencies are in units of omega0)");
    }
    if (!(alpha >= 0.0)) throw ConfigError("config: \"alpha\" must be >= 0");
    if (!(theta >= 0.0)) throw ConfigError("config: \"theta\" must be >= 0");
    try {
        spectral.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(grid.t_max > 0.0)) throw ConfigError("config: \"grid.t_max\" must be > 0");
    if (grid.n_points < 2) throw ConfigError("config: \"grid.n_points\" must be >= 2");
    if (grid.kind != "uniform" && grid.kind != "log" && grid.kind != "compare") {
        throw ConfigError("config: \"grid.kind\" must be uniform, log, or compare");
    }
    if (grid.t_min < 0.0) throw ConfigError("config: \"grid.t_min\" must be >= 0");
    if (fock_dim != 0 && fock_dim < 2) throw ConfigError("config: \"fock_dim\" must be >= 2");
    if (!(rk_tol > 0.0)) throw ConfigError("config: \"rk_tol\" must be > 0");
    if (!(tail_tol > 0.0)) throw ConfigError("config: \"tail_tol\" must be > 0");
    if (quadrature.gl_points < 4) throw ConfigError("config: \"quadrature.gl_points\" must be >= 4");
    if (!(quadrature.periods_per_panel > 0.0)) throw ConfigError("config: \"quadrature.periods_per_panel\" must be > 0");
    if (!(quadrature.refine >= 1.0)) throw ConfigError("config: \"quadrature.refine\" must be >= 1");
    if (models.empty()) throw ConfigError("config: \"models\" must be nonempty");
    if (oracle.n_modes < 2) throw ConfigError("config: \"oracle.n_modes\" must be >= 2");
    if (!(oracle.omega_max > 0.0)) throw ConfigError("config: \"oracle.omega_max\" must be > 0");
}

int RunConfig::resolved_fock_dim() const {
    if (fock_dim > 0) return fock_dim;
    if (theta <= 1.0) return 40;
    if (theta <= 3.0) return 80;
    return 120;
}

BathSpec RunConfig::bath() const { return {alpha, theta, spectral}; }

std::vector<double> RunConfig::make_grid() const {
    std::vector<double> g;
    if (grid.kind == "uniform") {
        g.reserve(static_cast<std::size_t>(grid.n_points));
        for (int i = 0; i < grid.n_points; ++i) {
            g.push_back(grid.t_max * i / double(grid.n_points - 1));
        }
        return g;
    }
    if (grid.kind == "log") {
        const double lo = grid.t_min > 0.0 ? grid.t_min : grid.t_max * 1e-5;
        g.push_back(0.0);
        auto tail = logspace(lo, grid.t_max, grid.n_points - 1);
        g.insert(g.end(), tail.begin(), tail.end());
        return g;
    }
    // compare: log head through the short-time window, uniform tail whose
    // final third is strictly uniform for the exponential fit.
    const double wc = spectral.omega_c;
    const double head_hi = std::min(0.04 / wc, 0.25 * grid.t_max);
    const double head_lo = grid.t_min > 0.0 ? grid.t_min : 5e-4 / wc;
    const int n_tail = std::max(grid.n_points, 96);
    g.push_back(0.0);
    for (double t : logspace(head_lo, head_hi, 33)) g.push_back(t);
    const double tail_start = head_hi * 1.02;
    for (int i = 0; i < n_tail; ++i) {
        g.push_back(tail_start + (grid.t_max - tail_start) * i / double(n_tail - 1));
    }
    return g;
}

std::vector<double> RunConfig::coefficient_grid(double t_max) const {
    const double wc = spectral.omega_c;
    const double head_hi = std::min(1.0 / wc, 0.2 * t_max);
    std::vector<double> g{0.0};
    const double head_lo = std::min(1e-4 / wc, 0.01 * head_hi);
    const int n_head = 1 + static_cast<int>(std::ceil(
                               16.0 * std::log10(head_hi / head_lo)));
    for (double t : logspace(head_lo, head_hi, std::max(n_head, 16))) g.push_back(t);
    // Uniform section: resolve the 2 omega0-scale oscillations of the
    // coefficients out to t_max.
    const double h = 0.3 / std::max(omega0, wc);
    const int n_unif = static_cast<int>(std::ceil((t_max * 1.0001 - head_hi) / h));
    for (int i = 1; i <= n_unif; ++i) g.push_back(head_hi + i * h);
    if (g.back() < t_max) g.push_back(t_max * 1.0001);
    return g;
}

RunConfig RunConfig::from_json(const json& j) {
    check_keys(j, {"omega0", "alpha", "theta", "spectral", "grid", "fock_dim",
                   "rk_tol", "tail_tol", "quadrature", "models", "oracle"},
               "");
    RunConfig cfg;
    cfg.omega0 = get_num(j, "omega0", 1.0);
    cfg.alpha = get_num(j, "alpha", cfg.alpha);
    cfg.theta = get_num(j, "theta", cfg.theta);
    if (j.contains("spectral")) {
        const json& s = j.at("spectral");
        check_keys(s, {"family", "omega_c", "omega_max"}, "spectral");
        cfg.spectral.kind = parse_family(get_str(s, "family", "drude"));
        cfg.spectral.omega_c = get_num(s, "omega_c", 1.0);
        if (s.contains("omega_max")) {
            cfg.spectral.omega_max = get_num(s, "omega_max", 0.0);
        } else if (cfg.spectral.kind == SpectralKind::drude_hard) {
            cfg.spectral.omega_max = 10.0 * cfg.spectral.omega_c;
        }
    }
    if (j.contains("grid")) {
        const json& s = j.at("grid");
        check_keys(s, {"t_max", "n_points", "kind", "t_min"}, "grid");
        cfg.grid.t_max = get_num(s, "t_max", cfg.grid.t_max);
        cfg.grid.n_points = get_int(s, "n_points", cfg.grid.n_points);
        cfg.grid.kind = get_str(s, "kind", cfg.grid.kind);
        cfg.grid.t_min = get_num(s, "t_min", cfg.grid.t_min);
    }
    cfg.fock_dim = get_int(j, "fock_dim", cfg.fock_dim);
    cfg.rk_tol = get_num(j, "rk_tol", cfg.rk_tol);
    cfg.tail_tol = get_num(j, "tail_tol", cfg.tail_tol);
    if (j.contains("quadrature")) {
        const json& s = j.at("quadrature");
        check_keys(s, {"gl_points", "periods_per_panel", "refine", "tail_rel_tol"},
                   "quadrature");
        cfg.quadrature.gl_points = get_int(s, "gl_points", cfg.quadrature.gl_points);
        cfg.quadrature.periods_per_panel =
            get_num(s, "periods_per_panel", cfg.quadrature.periods_per_panel);
        cfg.quadrature.refine = get_num(s, "refine", cfg.quadrature.refine);
        cfg.quadrature.tail_rel_tol =
            get_num(s, "tail_rel_tol", cfg.quadrature.tail_rel_tol);
    }
    if (j.contains("models")) {
        if (!j.at("models").is_array()) throw ConfigError("config: \"models\" must be an array");
        cfg.models.clear();
        for (const auto& m : j.at("models")) {
            if (!m.is_string()) throw ConfigError("config: \"models\" entries must be strings");
            cfg.models.push_back(parse_model(m.get<std::string>()));
        }
    }
    if (j.contains("oracle")) {
        const json& s = j.at("oracle");
        check_keys(s, {"n_modes", "omega_max"}, "oracle");
        cfg.oracle.n_modes = get_int(s, "n_modes", cfg.oracle.n_modes);
        cfg.oracle.omega_max = get_num(s, "omega_max", cfg.oracle.omega_max);
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    return from_json(j);
}

json RunConfig::to_json() const {
    json j;
    j["omega0"] = omega0;
    j["alpha"] = alpha;
    j["theta"] = theta;
    j["spectral"]["family"] = family_name(spectral.kind);
    j["spectral"]["omega_c"] = spectral.omega_c;
    if (spectral.omega_max) j["spectral"]["omega_max"] = *spectral.omega_max;
    j["grid"]["t_max"] = grid.t_max;
    j["grid"]["n_points"] = grid.n_points;
    j["grid"]["kind"] = grid.kind;
    if (grid.t_min > 0.0) j["grid"]["t_min"] = grid.t_min;
    j["fock_dim"] = resolved_fock_dim();
    j["rk_tol"] = rk_tol;
    j["tail_tol"] = tail_tol;
    j["quadrature"]["gl_points"] = quadrature.gl_points;
    j["quadrature"]["periods_per_panel"] = quadrature.periods_per_panel;
    j["quadrature"]["refine"] = quadrature.refine;
    j["quadrature"]["tail_rel_tol"] = quadrature.tail_rel_tol;
    j["models"] = json::array();
    for (ModelKind m : models) j["models"].push_back(model_name(m));
    j["oracle"]["n_modes"] = oracle.n_modes;
    j["oracle"]["omega_max"] = oracle.omega_max;
    return j;
}

void apply_overrides(RunConfig& cfg, const ConfigOverrides& ov) {
    if (ov.alpha) cfg.alpha = *ov.alpha;
    if (ov.theta) cfg.theta = *ov.theta;
    if (ov.t_max) cfg.grid.t_max = *ov.t_max;
    if (ov.n_points) cfg.grid.n_points = *ov.n_points;
    if (ov.fock_dim) cfg.fock_dim = *ov.fock_dim;
    if (ov.grid_kind) cfg.grid.kind = *ov.grid_kind;
    if (ov.models) cfg.models = *ov.models;
    cfg.validate();
}

}  // namespace oscbath
